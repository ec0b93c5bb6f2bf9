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

// Domain types shared by every module: plans, reflections, atomic actions,
// accessibility trees, perceptions, execution records and long-term
// knowledge. Values are immutable once built and safe to share.

#ifndef MOBAGENT_CORE_TYPES_H_
#define MOBAGENT_CORE_TYPES_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mobagent {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

// Pixel rectangle. Point hit-testing is half-open: [left, right) x [top, bottom).
struct Rect {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  int width() const { return right - left; }
  int height() const { return bottom - top; }
  bool well_formed() const { return left <= right && top <= bottom; }
  bool empty() const { return width() <= 0 || height() <= 0; }
  bool Contains(Point p) const {
    return p.x >= left && p.x < right && p.y >= top && p.y < bottom;
  }
  // Closed containment of another rectangle.
  bool Contains(const Rect& o) const {
    return o.left >= left && o.right <= right && o.top >= top &&
           o.bottom <= bottom;
  }
  Point Center() const { return {(left + right) / 2, (top + bottom) / 2}; }
  std::string ToString() const;  // "[l,t][r,b]"
  bool operator==(const Rect&) const = default;
};

// ---------------------------------------------------------------------------
// Global planning

struct AppMetadata {
  std::string package_name;
  std::string description;
  std::string display_name;
  bool operator==(const AppMetadata&) const = default;
};

enum class ItemStatus { kPending, kActive, kDone, kRevised };

const char* ItemStatusName(ItemStatus s);
ItemStatus ParseItemStatus(const std::string& s);

struct SubTask {
  std::string raw_instruction;
  std::string context_request;
  std::string target_package;
  std::optional<std::string> rewritten_instruction;
  bool operator==(const SubTask&) const = default;
};

struct GlobalPlanItem {
  std::string description;
  ItemStatus status = ItemStatus::kPending;
  SubTask subtask;
  bool operator==(const GlobalPlanItem&) const = default;
};

// The current sub-task is the single active item; it is derived, not stored.
struct GlobalPlan {
  std::vector<GlobalPlanItem> overall_plan;
  std::string context_carryover;
  bool complete = false;

  const GlobalPlanItem* active() const;
  GlobalPlanItem* active();
  std::optional<SubTask> current_subtask() const;
  int CountWithStatus(ItemStatus s) const;
  bool operator==(const GlobalPlan&) const = default;
};

// ---------------------------------------------------------------------------
// Action loop

struct PlanItem {
  std::string description;
  ItemStatus status = ItemStatus::kPending;
  bool operator==(const PlanItem&) const = default;
};

struct Plan {
  std::vector<PlanItem> overall_plan;
  std::string current_subgoal;

  // Index of the active item, or -1 once every item is done.
  int ActiveIndex() const;
  int DoneCount() const;
  bool Complete() const { return ActiveIndex() < 0; }
  bool operator==(const Plan&) const = default;
};

enum class ActionResult { kA, kB, kC, kD };

char ActionResultCode(ActionResult r);
ActionResult ParseActionResult(const std::string& code);
inline bool IsFailure(ActionResult r) {
  return r == ActionResult::kC || r == ActionResult::kD;
}

// error_cause is present exactly when the result is C or D.
class Reflection {
 public:
  Reflection(ActionResult action_result, std::string plan_progress,
             std::optional<std::string> error_cause);

  ActionResult action_result() const { return action_result_; }
  const std::string& plan_progress() const { return plan_progress_; }
  const std::optional<std::string>& error_cause() const { return error_cause_; }
  bool operator==(const Reflection&) const = default;

 private:
  ActionResult action_result_;
  std::string plan_progress_;
  std::optional<std::string> error_cause_;
};

struct Tap {
  Point at;
  std::optional<int> mark;
  bool operator==(const Tap&) const = default;
};
struct Swipe {
  Point from;
  Point to;
  double duration = 0.5;
  std::optional<int> mark;
  std::string direction;  // used only with a mark: up|down|left|right
  bool operator==(const Swipe&) const = default;
};
struct LongPress {
  Point at;
  double duration = 1.0;
  std::optional<int> mark;
  bool operator==(const LongPress&) const = default;
};
struct Input {
  std::string text;
  bool operator==(const Input&) const = default;
};
struct ClearInput {
  bool operator==(const ClearInput&) const = default;
};
struct KeyEvent {
  std::string key;
  bool operator==(const KeyEvent&) const = default;
};
struct Wait {
  double duration = 1.0;
  bool operator==(const Wait&) const = default;
};
struct Finish {
  bool operator==(const Finish&) const = default;
};
struct NeedInteraction {
  bool operator==(const NeedInteraction&) const = default;
};
struct ListApps {
  bool operator==(const ListApps&) const = default;
};
struct StartApp {
  std::string package;
  bool operator==(const StartApp&) const = default;
};

using AtomicAction =
    std::variant<Tap, Swipe, LongPress, Input, ClearInput, KeyEvent, Wait,
                 Finish, NeedInteraction, ListApps, StartApp>;

std::string ActionKind(const AtomicAction& a);
std::optional<int> ActionMark(const AtomicAction& a);
// Screen coordinate the action touches, if any (swipe start for swipes).
std::optional<Point> ActionPoint(const AtomicAction& a);
std::string Describe(const AtomicAction& a);
bool IsTerminal(const AtomicAction& a);  // Finish or NeedInteraction

// Non-empty; a Finish/NeedInteraction may only appear last.
class ActionDecision {
 public:
  ActionDecision(std::vector<AtomicAction> sequence, std::string expected_result);

  const std::vector<AtomicAction>& sequence() const { return sequence_; }
  const std::string& expected_result() const { return expected_result_; }
  bool HasUnresolvedMark() const;
  bool IsFinish() const;
  bool IsNeedInteraction() const;
  std::string Describe() const;
  bool operator==(const ActionDecision&) const = default;

 private:
  std::vector<AtomicAction> sequence_;
  std::string expected_result_;
};

// ---------------------------------------------------------------------------
// Screens

using NodePath = std::vector<int>;
std::string PathToString(const NodePath& p);  // "/0/2", root is "/"
NodePath ParsePath(const std::string& s);

struct UiNode {
  std::string class_name;
  std::string resource_id;
  std::string text;
  Rect bounds;
  bool clickable = false;
  bool scrollable = false;
  std::vector<UiNode> children;
  int draw_order = 0;

  bool operable() const { return clickable || scrollable; }
  const UiNode* Find(const NodePath& path) const;
  UiNode* Find(const NodePath& path);
  int Count() const;
  bool operator==(const UiNode&) const = default;
};

enum class MarkKind { kClickable, kScrollable };

struct MarkEntry {
  int mark = 0;
  MarkKind kind = MarkKind::kClickable;
  Point center;
  Rect bbox;
  NodePath node_path;
  bool valid = true;
  bool operator==(const MarkEntry&) const = default;
};

struct Screenshot {
  std::string handle;  // opaque, e.g. "sim://app/screen"
  std::string path;    // optional image file
  bool operator==(const Screenshot&) const = default;
};

enum class PerceptionMode { kVisual, kNonVisual };
const char* PerceptionModeName(PerceptionMode m);
PerceptionMode ParsePerceptionMode(const std::string& s);

struct ScreenPerception {
  std::string id;  // content address, see ComputePerceptionId
  Screenshot screenshot;
  UiNode tree;
  std::vector<MarkEntry> set_of_marks;
  std::string textual;
  std::optional<std::string> page_id;
  PerceptionMode mode = PerceptionMode::kVisual;
  bool operator==(const ScreenPerception&) const = default;
};

using ScreenRef = std::shared_ptr<const ScreenPerception>;

// ---------------------------------------------------------------------------
// Interaction

enum InteractionType {
  kNoInteraction = 0,
  kConfirmSensitive = 1,
  kConfirmIrreversible = 2,
  kChooseOption = 3,
  kClarify = 4,
};

struct InteractionRequest {
  int interaction_type = kNoInteraction;
  std::string rationale;

  InteractionRequest() = default;
  InteractionRequest(int type, std::string why);
  bool needed() const { return interaction_type != kNoInteraction; }
  bool operator==(const InteractionRequest&) const = default;
};

struct DialogTurn {
  std::string prompt;
  std::optional<std::string> reply;
  bool complete() const { return reply.has_value(); }
  bool operator==(const DialogTurn&) const = default;
};

// summary present iff status == 1.
class DialogOutcome {
 public:
  DialogOutcome(int status, std::optional<std::string> summary);
  int status() const { return status_; }
  bool resolved() const { return status_ == 1; }
  const std::optional<std::string>& summary() const { return summary_; }
  bool operator==(const DialogOutcome&) const = default;

 private:
  int status_;
  std::optional<std::string> summary_;
};

// ---------------------------------------------------------------------------
// Memory records

struct KeyContext {
  std::vector<std::pair<int, std::string>> entries;  // (round, extraction)

  std::string MergedView() const;
  bool operator==(const KeyContext&) const = default;
};

// Per-action execution result reported by the device.
struct ActionOutcome {
  std::string action;   // Describe() of the executed action
  std::string status;   // ok | no_effect | error
  std::string error;    // NoInputFocus | OutOfBounds | AppNotFound | ...
  std::string from_screen;
  std::string to_screen;
  std::string effect;
  bool operator==(const ActionOutcome&) const = default;
};

struct ActionLoopRecord {
  int round = 0;
  Plan plan;
  std::optional<ActionDecision> decision;
  ScreenRef start_screen;
  ScreenRef end_screen;
  std::optional<Reflection> reflection;
  // Round suspended by the interaction loop: decision, end screen and
  // reflection stay empty and the reflection slot reads "interaction".
  bool interrupted = false;
  std::vector<ActionOutcome> outcomes;
  std::optional<std::string> decision_error;
};

struct InteractionRecord {
  int action_round = 0;
  InteractionRequest request;
  std::vector<DialogTurn> turns;
  std::optional<DialogOutcome> outcome;
  bool operator==(const InteractionRecord&) const = default;
};

struct FullExecutionRecord {
  int subtask_index = 0;
  std::string instruction;
  std::vector<ActionLoopRecord> action_records;
  std::vector<KeyContext> contexts;  // C^t, parallel to action_records
  std::vector<InteractionRecord> interaction_records;
  bool finished = false;
  std::string abort_reason;
};

struct TraceStep {
  int round = 0;
  std::optional<ActionDecision> decision;
  std::optional<Reflection> reflection;
  bool operator==(const TraceStep&) const = default;
};

struct TraceSummary {
  std::string instruction;
  std::string final_subgoal;
  std::vector<TraceStep> steps;
  KeyContext final_context;
  bool operator==(const TraceSummary&) const = default;
};

TraceSummary Project(const FullExecutionRecord& record);

// ---------------------------------------------------------------------------
// Long-term knowledge

enum class TrickCategory { kPlanning, kExecution, kErrorRecovery };
const char* TrickCategoryName(TrickCategory c);
TrickCategory ParseTrickCategory(const std::string& s);

inline constexpr const char kCommonScope[] = "Common";

struct Trick {
  TrickCategory category = TrickCategory::kPlanning;
  std::string scope;
  std::string text;
  std::string provenance;
  bool operator==(const Trick&) const = default;
};

struct Trigger {
  std::string action_kind;
  std::string effect_summary;
  std::optional<std::string> destination_page_id;
  bool operator==(const Trigger&) const = default;
};

struct ComponentKnowledge {
  NodePath node_path;
  std::string description;
  std::vector<Trigger> triggers;
  bool operator==(const ComponentKnowledge&) const = default;
};

struct Page {
  std::string page_id;
  UiNode canonical_tree;
  std::vector<ComponentKnowledge> components;

  const ComponentKnowledge* Component(const NodePath& path) const;
  ComponentKnowledge* Component(const NodePath& path);
  bool operator==(const Page&) const = default;
};

struct AppMap {
  std::string app;
  std::vector<Page> pages;

  const Page* FindPage(const std::string& page_id) const;
  Page* FindPage(const std::string& page_id);
  int TriggerCount() const;
  bool operator==(const AppMap&) const = default;
};

}  // namespace mobagent

#endif  // MOBAGENT_CORE_TYPES_H_
