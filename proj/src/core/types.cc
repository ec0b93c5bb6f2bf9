// Copyright 2026 The mobagent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mobagent/core/types.h"

#include <sstream>

#include "mobagent/core/errors.h"

namespace mobagent {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string PointString(Point p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string Rect::ToString() const {
  std::ostringstream os;
  os << "[" << left << "," << top << "][" << right << "," << bottom << "]";
  return os.str();
}

const char* ItemStatusName(ItemStatus s) {
  switch (s) {
    case ItemStatus::kPending:
      return "pending";
    case ItemStatus::kActive:
      return "active";
    case ItemStatus::kDone:
      return "done";
    case ItemStatus::kRevised:
      return "revised";
  }
  return "pending";
}

ItemStatus ParseItemStatus(const std::string& s) {
  if (s == "pending") return ItemStatus::kPending;
  if (s == "active") return ItemStatus::kActive;
  if (s == "done") return ItemStatus::kDone;
  if (s == "revised") return ItemStatus::kRevised;
  throw ValidationError("unknown item status '" + s + "'");
}

const GlobalPlanItem* GlobalPlan::active() const {
  for (const auto& item : overall_plan)
    if (item.status == ItemStatus::kActive) return &item;
  return nullptr;
}

GlobalPlanItem* GlobalPlan::active() {
  for (auto& item : overall_plan)
    if (item.status == ItemStatus::kActive) return &item;
  return nullptr;
}

std::optional<SubTask> GlobalPlan::current_subtask() const {
  if (const auto* item = active()) return item->subtask;
  return std::nullopt;
}

int GlobalPlan::CountWithStatus(ItemStatus s) const {
  int n = 0;
  for (const auto& item : overall_plan) n += item.status == s;
  return n;
}

int Plan::ActiveIndex() const {
  for (size_t i = 0; i < overall_plan.size(); ++i)
    if (overall_plan[i].status == ItemStatus::kActive) return static_cast<int>(i);
  return -1;
}

int Plan::DoneCount() const {
  int n = 0;
  for (const auto& item : overall_plan) n += item.status == ItemStatus::kDone;
  return n;
}

char ActionResultCode(ActionResult r) {
  return static_cast<char>('A' + static_cast<int>(r));
}

ActionResult ParseActionResult(const std::string& code) {
  if (code.size() == 1 && code[0] >= 'A' && code[0] <= 'D')
    return static_cast<ActionResult>(code[0] - 'A');
  throw ValidationError("action_result must be one of A, B, C, D; got '" + code +
                        "'");
}

Reflection::Reflection(ActionResult action_result, std::string plan_progress,
                       std::optional<std::string> error_cause)
    : action_result_(action_result),
      plan_progress_(std::move(plan_progress)),
      error_cause_(std::move(error_cause)) {
  const bool failure = IsFailure(action_result_);
  if (failure && !error_cause_)
    throw ValidationError(std::string("reflection ") +
                          ActionResultCode(action_result_) +
                          " requires an error_cause");
  if (!failure && error_cause_)
    throw ValidationError(std::string("reflection ") +
                          ActionResultCode(action_result_) +
                          " must not carry an error_cause");
}

std::string ActionKind(const AtomicAction& a) {
  return std::visit(
      Overloaded{[](const Tap&) { return std::string("Tap"); },
                 [](const Swipe&) { return std::string("Swipe"); },
                 [](const LongPress&) { return std::string("LongPress"); },
                 [](const Input&) { return std::string("Input"); },
                 [](const ClearInput&) { return std::string("ClearInput"); },
                 [](const KeyEvent&) { return std::string("KeyEvent"); },
                 [](const Wait&) { return std::string("Wait"); },
                 [](const Finish&) { return std::string("Finish"); },
                 [](const NeedInteraction&) {
                   return std::string("NeedInteraction");
                 },
                 [](const ListApps&) { return std::string("ListApps"); },
                 [](const StartApp&) { return std::string("StartApp"); }},
      a);
}

std::optional<int> ActionMark(const AtomicAction& a) {
  if (const auto* t = std::get_if<Tap>(&a)) return t->mark;
  if (const auto* s = std::get_if<Swipe>(&a)) return s->mark;
  if (const auto* l = std::get_if<LongPress>(&a)) return l->mark;
  return std::nullopt;
}

std::optional<Point> ActionPoint(const AtomicAction& a) {
  if (ActionMark(a)) return std::nullopt;
  if (const auto* t = std::get_if<Tap>(&a)) return t->at;
  if (const auto* s = std::get_if<Swipe>(&a)) return s->from;
  if (const auto* l = std::get_if<LongPress>(&a)) return l->at;
  return std::nullopt;
}

std::string Describe(const AtomicAction& a) {
  return std::visit(
      Overloaded{
          [](const Tap& t) {
            return t.mark ? "Tap(mark=" + std::to_string(*t.mark) + ")"
                          : "Tap" + PointString(t.at);
          },
          [](const Swipe& s) {
            if (s.mark)
              return "Swipe(mark=" + std::to_string(*s.mark) + "," +
                     s.direction + ")";
            std::ostringstream os;
            os << "Swipe(" << s.from.x << "," << s.from.y << "," << s.to.x
               << "," << s.to.y << "," << s.duration << ")";
            return os.str();
          },
          [](const LongPress& l) {
            std::ostringstream os;
            if (l.mark)
              os << "LongPress(mark=" << *l.mark << "," << l.duration << ")";
            else
              os << "LongPress(" << l.at.x << "," << l.at.y << "," << l.duration
                 << ")";
            return os.str();
          },
          [](const Input& i) { return "Input(" + Quote(i.text) + ")"; },
          [](const ClearInput&) { return std::string("ClearInput()"); },
          [](const KeyEvent& k) { return "KeyEvent(" + k.key + ")"; },
          [](const Wait& w) {
            std::ostringstream os;
            os << "Wait(" << w.duration << ")";
            return os.str();
          },
          [](const Finish&) { return std::string("Finish()"); },
          [](const NeedInteraction&) {
            return std::string("NeedInteraction()");
          },
          [](const ListApps&) { return std::string("ListApps()"); },
          [](const StartApp& s) { return "StartApp(" + s.package + ")"; }},
      a);
}

bool IsTerminal(const AtomicAction& a) {
  return std::holds_alternative<Finish>(a) ||
         std::holds_alternative<NeedInteraction>(a);
}

ActionDecision::ActionDecision(std::vector<AtomicAction> sequence,
                               std::string expected_result)
    : sequence_(std::move(sequence)), expected_result_(std::move(expected_result)) {
  if (sequence_.empty())
    throw ValidationError("action decision must contain at least one action");
  for (size_t i = 0; i + 1 < sequence_.size(); ++i) {
    if (IsTerminal(sequence_[i]))
      throw ValidationError(ActionKind(sequence_[i]) +
                            " must be the last action of a sequence");
  }
}

bool ActionDecision::HasUnresolvedMark() const {
  for (const auto& a : sequence_)
    if (ActionMark(a)) return true;
  return false;
}

bool ActionDecision::IsFinish() const {
  return std::holds_alternative<Finish>(sequence_.back());
}

bool ActionDecision::IsNeedInteraction() const {
  return std::holds_alternative<NeedInteraction>(sequence_.back());
}

std::string ActionDecision::Describe() const {
  std::string out;
  for (size_t i = 0; i < sequence_.size(); ++i) {
    if (i) out += "; ";
    out += mobagent::Describe(sequence_[i]);
  }
  return out;
}

std::string PathToString(const NodePath& p) {
  if (p.empty()) return "/";
  std::string out;
  for (int i : p) out += "/" + std::to_string(i);
  return out;
}

NodePath ParsePath(const std::string& s) {
  if (s.empty() || s[0] != '/') throw ValidationError("bad node path '" + s + "'");
  NodePath out;
  size_t pos = 1;
  while (pos < s.size()) {
    size_t next = s.find('/', pos);
    if (next == std::string::npos) next = s.size();
    const std::string part = s.substr(pos, next - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("bad node path '" + s + "'");
    out.push_back(std::stoi(part));
    pos = next + 1;
  }
  return out;
}

const UiNode* UiNode::Find(const NodePath& path) const {
  const UiNode* node = this;
  for (int i : path) {
    if (i < 0 || i >= static_cast<int>(node->children.size())) return nullptr;
    node = &node->children[i];
  }
  return node;
}

UiNode* UiNode::Find(const NodePath& path) {
  return const_cast<UiNode*>(std::as_const(*this).Find(path));
}

int UiNode::Count() const {
  int n = 1;
  for (const auto& c : children) n += c.Count();
  return n;
}

const char* PerceptionModeName(PerceptionMode m) {
  return m == PerceptionMode::kVisual ? "visual" : "nonvisual";
}

PerceptionMode ParsePerceptionMode(const std::string& s) {
  if (s == "visual") return PerceptionMode::kVisual;
  if (s == "nonvisual" || s == "non-visual") return PerceptionMode::kNonVisual;
  throw ValidationError("perception mode must be visual or nonvisual, got '" +
                        s + "'");
}

InteractionRequest::InteractionRequest(int type, std::string why)
    : interaction_type(type), rationale(std::move(why)) {
  if (type < 0 || type > 4)
    throw ValidationError("interaction_type must be in 0..4, got " +
                          std::to_string(type));
}

DialogOutcome::DialogOutcome(int status, std::optional<std::string> summary)
    : status_(status), summary_(std::move(summary)) {
  if (status_ != 0 && status_ != 1)
    throw ValidationError("dialog status must be 0 or 1");
  if (resolved() != summary_.has_value())
    throw ValidationError("dialog summary must be present iff status is 1");
}

std::string KeyContext::MergedView() const {
  std::string out;
  for (const auto& [round, text] : entries) {
    if (!out.empty()) out += "\n";
    out += "[round " + std::to_string(round) + "] " + text;
  }
  return out;
}

TraceSummary Project(const FullExecutionRecord& record) {
  TraceSummary t;
  t.instruction = record.instruction;
  if (!record.action_records.empty())
    t.final_subgoal = record.action_records.back().plan.current_subgoal;
  for (const auto& r : record.action_records)
    t.steps.push_back({r.round, r.decision, r.reflection});
  if (!record.contexts.empty()) t.final_context = record.contexts.back();
  return t;
}

const char* TrickCategoryName(TrickCategory c) {
  switch (c) {
    case TrickCategory::kPlanning:
      return "planning";
    case TrickCategory::kExecution:
      return "execution";
    case TrickCategory::kErrorRecovery:
      return "error_recovery";
  }
  return "planning";
}

TrickCategory ParseTrickCategory(const std::string& s) {
  if (s == "planning") return TrickCategory::kPlanning;
  if (s == "execution") return TrickCategory::kExecution;
  if (s == "error_recovery") return TrickCategory::kErrorRecovery;
  throw ValidationError("unknown trick category '" + s + "'");
}

const ComponentKnowledge* Page::Component(const NodePath& path) const {
  for (const auto& c : components)
    if (c.node_path == path) return &c;
  return nullptr;
}

ComponentKnowledge* Page::Component(const NodePath& path) {
  return const_cast<ComponentKnowledge*>(std::as_const(*this).Component(path));
}

const Page* AppMap::FindPage(const std::string& page_id) const {
  for (const auto& p : pages)
    if (p.page_id == page_id) return &p;
  return nullptr;
}

Page* AppMap::FindPage(const std::string& page_id) {
  return const_cast<Page*>(std::as_const(*this).FindPage(page_id));
}

int AppMap::TriggerCount() const {
  int n = 0;
  for (const auto& p : pages)
    for (const auto& c : p.components) n += static_cast<int>(c.triggers.size());
  return n;
}

}  // namespace mobagent
