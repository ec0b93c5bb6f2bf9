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

#include "mobagent/core/serialization.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "mobagent/core/errors.h"

namespace mobagent {

namespace {

template <class T>
void PutOptional(Json& j, const char* key, const std::optional<T>& v) {
  if (v)
    j[key] = *v;
  else
    j[key] = nullptr;
}

std::optional<std::string> GetOptionalString(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

std::optional<int> GetOptionalInt(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<int>();
}

template <class T>
T ValueOr(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

void to_json(Json& j, const Point& v) { j = Json::array({v.x, v.y}); }
void from_json(const Json& j, Point& v) {
  v.x = j.at(0).get<int>();
  v.y = j.at(1).get<int>();
}

void to_json(Json& j, const Rect& v) {
  j = Json::array({v.left, v.top, v.right, v.bottom});
}
void from_json(const Json& j, Rect& v) {
  v.left = j.at(0).get<int>();
  v.top = j.at(1).get<int>();
  v.right = j.at(2).get<int>();
  v.bottom = j.at(3).get<int>();
}

void to_json(Json& j, const AppMetadata& v) {
  j = Json{{"package_name", v.package_name},
           {"description", v.description},
           {"display_name", v.display_name}};
}
void from_json(const Json& j, AppMetadata& v) {
  v.package_name = j.at("package_name").get<std::string>();
  v.description = ValueOr<std::string>(j, "description", "");
  v.display_name = ValueOr<std::string>(j, "display_name", "");
}

void to_json(Json& j, const SubTask& v) {
  j = Json{{"raw_instruction", v.raw_instruction},
           {"context_request", v.context_request},
           {"target_package", v.target_package}};
  PutOptional(j, "rewritten_instruction", v.rewritten_instruction);
}
void from_json(const Json& j, SubTask& v) {
  v.raw_instruction = j.at("raw_instruction").get<std::string>();
  v.context_request = ValueOr<std::string>(j, "context_request", "");
  v.target_package = j.at("target_package").get<std::string>();
  v.rewritten_instruction = GetOptionalString(j, "rewritten_instruction");
}

void to_json(Json& j, const GlobalPlanItem& v) {
  j = Json{{"description", v.description},
           {"status", ItemStatusName(v.status)},
           {"subtask", v.subtask}};
}
void from_json(const Json& j, GlobalPlanItem& v) {
  v.description = j.at("description").get<std::string>();
  v.status = ParseItemStatus(j.at("status").get<std::string>());
  v.subtask = j.at("subtask").get<SubTask>();
}

void to_json(Json& j, const GlobalPlan& v) {
  j = Json{{"overall_plan", v.overall_plan},
           {"context_carryover", v.context_carryover},
           {"complete", v.complete}};
  PutOptional(j, "current_subtask", v.current_subtask());
}
void from_json(const Json& j, GlobalPlan& v) {
  v.overall_plan = j.at("overall_plan").get<std::vector<GlobalPlanItem>>();
  v.context_carryover = ValueOr<std::string>(j, "context_carryover", "");
  v.complete = ValueOr<bool>(j, "complete", false);
  if (v.CountWithStatus(ItemStatus::kActive) > 1)
    throw ValidationError("global plan has more than one active sub-task");
}

void to_json(Json& j, const PlanItem& v) {
  j = Json{{"description", v.description}, {"status", ItemStatusName(v.status)}};
}
void from_json(const Json& j, PlanItem& v) {
  v.description = j.at("description").get<std::string>();
  v.status = ParseItemStatus(j.at("status").get<std::string>());
}

void to_json(Json& j, const Plan& v) {
  j = Json{{"overall_plan", v.overall_plan},
           {"current_subgoal", v.current_subgoal}};
}
void from_json(const Json& j, Plan& v) {
  v.overall_plan = j.at("overall_plan").get<std::vector<PlanItem>>();
  v.current_subgoal = j.at("current_subgoal").get<std::string>();
}

void to_json(Json& j, const Reflection& v) {
  j = Json{{"action_result", std::string(1, ActionResultCode(v.action_result()))},
           {"plan_progress", v.plan_progress()}};
  PutOptional(j, "error_cause", v.error_cause());
}
Reflection ReflectionFromJson(const Json& j) {
  return Reflection(ParseActionResult(j.at("action_result").get<std::string>()),
                    ValueOr<std::string>(j, "plan_progress", ""),
                    GetOptionalString(j, "error_cause"));
}

void to_json(Json& j, const AtomicAction& v) {
  j = Json{{"type", ActionKind(v)}};
  if (const auto* t = std::get_if<Tap>(&v)) {
    if (t->mark) {
      j["mark"] = *t->mark;
    } else {
      j["x"] = t->at.x;
      j["y"] = t->at.y;
    }
  } else if (const auto* s = std::get_if<Swipe>(&v)) {
    if (s->mark) {
      j["mark"] = *s->mark;
      j["direction"] = s->direction;
    } else {
      j["x1"] = s->from.x;
      j["y1"] = s->from.y;
      j["x2"] = s->to.x;
      j["y2"] = s->to.y;
    }
    j["duration"] = s->duration;
  } else if (const auto* l = std::get_if<LongPress>(&v)) {
    if (l->mark) {
      j["mark"] = *l->mark;
    } else {
      j["x"] = l->at.x;
      j["y"] = l->at.y;
    }
    j["duration"] = l->duration;
  } else if (const auto* i = std::get_if<Input>(&v)) {
    j["text"] = i->text;
  } else if (const auto* k = std::get_if<KeyEvent>(&v)) {
    j["key"] = k->key;
  } else if (const auto* w = std::get_if<Wait>(&v)) {
    j["duration"] = w->duration;
  } else if (const auto* a = std::get_if<StartApp>(&v)) {
    j["package"] = a->package;
  }
}

AtomicAction ActionFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw SchemaError("action must be an object with a 'type'");
  const std::string type = j.at("type").get<std::string>();
  auto coord = [&](const char* key) {
    if (!j.contains(key)) throw SchemaError(type + " requires '" + key + "'");
    const int v = j.at(key).get<int>();
    if (v < 0) throw SchemaError(type + " coordinate must be non-negative");
    return v;
  };
  if (type == "Tap") {
    Tap t;
    t.mark = GetOptionalInt(j, "mark");
    if (!t.mark) t.at = {coord("x"), coord("y")};
    return t;
  }
  if (type == "Swipe") {
    Swipe s;
    s.mark = GetOptionalInt(j, "mark");
    s.duration = ValueOr<double>(j, "duration", 0.5);
    if (s.mark) {
      s.direction = ValueOr<std::string>(j, "direction", "up");
      if (s.direction != "up" && s.direction != "down" && s.direction != "left" &&
          s.direction != "right")
        throw SchemaError("Swipe direction must be up|down|left|right");
    } else {
      s.from = {coord("x1"), coord("y1")};
      s.to = {coord("x2"), coord("y2")};
    }
    return s;
  }
  if (type == "LongPress") {
    LongPress l;
    l.mark = GetOptionalInt(j, "mark");
    l.duration = ValueOr<double>(j, "duration", 1.0);
    if (!l.mark) l.at = {coord("x"), coord("y")};
    return l;
  }
  if (type == "Input") {
    if (!j.contains("text")) throw SchemaError("Input requires 'text'");
    return Input{j.at("text").get<std::string>()};
  }
  if (type == "ClearInput") return ClearInput{};
  if (type == "KeyEvent") {
    if (!j.contains("key")) throw SchemaError("KeyEvent requires 'key'");
    return KeyEvent{j.at("key").get<std::string>()};
  }
  if (type == "Wait") return Wait{ValueOr<double>(j, "duration", 1.0)};
  if (type == "Finish") return Finish{};
  if (type == "NeedInteraction") return NeedInteraction{};
  if (type == "ListApps") return ListApps{};
  if (type == "StartApp") {
    if (!j.contains("package")) throw SchemaError("StartApp requires 'package'");
    return StartApp{j.at("package").get<std::string>()};
  }
  throw SchemaError("unknown action type '" + type + "'");
}

void to_json(Json& j, const ActionDecision& v) {
  Json seq = Json::array();
  for (const auto& a : v.sequence()) seq.push_back(a);
  j = Json{{"sequence", seq}, {"expected_result", v.expected_result()}};
}
ActionDecision DecisionFromJson(const Json& j) {
  std::vector<AtomicAction> seq;
  for (const auto& a : j.at("sequence")) seq.push_back(ActionFromJson(a));
  return ActionDecision(std::move(seq),
                        ValueOr<std::string>(j, "expected_result", ""));
}

void to_json(Json& j, const UiNode& v) {
  j = Json{{"class_name", v.class_name},   {"resource_id", v.resource_id},
           {"text", v.text},               {"bounds", v.bounds},
           {"clickable", v.clickable},     {"scrollable", v.scrollable},
           {"draw_order", v.draw_order},   {"children", v.children}};
}
void from_json(const Json& j, UiNode& v) {
  v.class_name = j.at("class_name").get<std::string>();
  v.resource_id = ValueOr<std::string>(j, "resource_id", "");
  v.text = ValueOr<std::string>(j, "text", "");
  v.bounds = j.at("bounds").get<Rect>();
  v.clickable = ValueOr<bool>(j, "clickable", false);
  v.scrollable = ValueOr<bool>(j, "scrollable", false);
  v.draw_order = ValueOr<int>(j, "draw_order", 0);
  v.children = j.contains("children") ? j.at("children").get<std::vector<UiNode>>()
                                      : std::vector<UiNode>{};
}

void to_json(Json& j, const MarkEntry& v) {
  j = Json{{"mark", v.mark},
           {"kind", v.kind == MarkKind::kClickable ? "clickable" : "scrollable"},
           {"center", v.center},
           {"bbox", v.bbox},
           {"node_path", PathToString(v.node_path)},
           {"valid", v.valid}};
}
void from_json(const Json& j, MarkEntry& v) {
  v.mark = j.at("mark").get<int>();
  v.kind = j.at("kind").get<std::string>() == "scrollable" ? MarkKind::kScrollable
                                                           : MarkKind::kClickable;
  v.center = j.at("center").get<Point>();
  v.bbox = j.at("bbox").get<Rect>();
  v.node_path = ParsePath(j.at("node_path").get<std::string>());
  v.valid = j.at("valid").get<bool>();
}

void to_json(Json& j, const Screenshot& v) {
  j = Json{{"handle", v.handle}, {"path", v.path}};
}
void from_json(const Json& j, Screenshot& v) {
  v.handle = j.at("handle").get<std::string>();
  v.path = ValueOr<std::string>(j, "path", "");
}

void to_json(Json& j, const ScreenPerception& v) {
  j = Json{{"id", v.id},
           {"screenshot", v.screenshot},
           {"tree", v.tree},
           {"set_of_marks", v.set_of_marks},
           {"textual", v.textual},
           {"mode", PerceptionModeName(v.mode)}};
  PutOptional(j, "page_id", v.page_id);
}
void from_json(const Json& j, ScreenPerception& v) {
  v.id = j.at("id").get<std::string>();
  v.screenshot = j.at("screenshot").get<Screenshot>();
  v.tree = j.at("tree").get<UiNode>();
  v.set_of_marks = j.at("set_of_marks").get<std::vector<MarkEntry>>();
  v.textual = j.at("textual").get<std::string>();
  v.mode = ParsePerceptionMode(j.at("mode").get<std::string>());
  v.page_id = GetOptionalString(j, "page_id");
}

void to_json(Json& j, const InteractionRequest& v) {
  j = Json{{"interaction_type", v.interaction_type}, {"rationale", v.rationale}};
}
void from_json(const Json& j, InteractionRequest& v) {
  v = InteractionRequest(j.at("interaction_type").get<int>(),
                         ValueOr<std::string>(j, "rationale", ""));
}

void to_json(Json& j, const DialogTurn& v) {
  j = Json{{"prompt", v.prompt}};
  PutOptional(j, "reply", v.reply);
}
void from_json(const Json& j, DialogTurn& v) {
  v.prompt = j.at("prompt").get<std::string>();
  v.reply = GetOptionalString(j, "reply");
}

void to_json(Json& j, const DialogOutcome& v) {
  j = Json{{"status", v.status()}};
  PutOptional(j, "summary", v.summary());
}
DialogOutcome DialogOutcomeFromJson(const Json& j) {
  return DialogOutcome(j.at("status").get<int>(), GetOptionalString(j, "summary"));
}

void to_json(Json& j, const KeyContext& v) {
  Json entries = Json::array();
  for (const auto& [round, text] : v.entries)
    entries.push_back(Json{{"round", round}, {"text", text}});
  j = Json{{"entries", entries}, {"merged_view", v.MergedView()}};
}
void from_json(const Json& j, KeyContext& v) {
  v.entries.clear();
  for (const auto& e : j.at("entries"))
    v.entries.emplace_back(e.at("round").get<int>(), e.at("text").get<std::string>());
}

void to_json(Json& j, const ActionOutcome& v) {
  j = Json{{"action", v.action},           {"status", v.status},
           {"error", v.error},             {"from_screen", v.from_screen},
           {"to_screen", v.to_screen},     {"effect", v.effect}};
}
void from_json(const Json& j, ActionOutcome& v) {
  v.action = j.at("action").get<std::string>();
  v.status = j.at("status").get<std::string>();
  v.error = ValueOr<std::string>(j, "error", "");
  v.from_screen = ValueOr<std::string>(j, "from_screen", "");
  v.to_screen = ValueOr<std::string>(j, "to_screen", "");
  v.effect = ValueOr<std::string>(j, "effect", "");
}

void to_json(Json& j, const InteractionRecord& v) {
  j = Json{{"action_round", v.action_round},
           {"request", v.request},
           {"turns", v.turns}};
  if (v.outcome)
    j["outcome"] = *v.outcome;
  else
    j["outcome"] = nullptr;
}
void from_json(const Json& j, InteractionRecord& v) {
  v.action_round = j.at("action_round").get<int>();
  v.request = j.at("request").get<InteractionRequest>();
  v.turns = j.at("turns").get<std::vector<DialogTurn>>();
  if (j.contains("outcome") && !j.at("outcome").is_null())
    v.outcome = DialogOutcomeFromJson(j.at("outcome"));
  else
    v.outcome.reset();
}

void to_json(Json& j, const FullExecutionRecord& v) {
  Json screens = Json::object();
  Json rounds = Json::array();
  auto ref = [&](const ScreenRef& s) -> Json {
    if (!s) return nullptr;
    screens[s->id] = *s;
    return s->id;
  };
  for (const auto& r : v.action_records) {
    Json jr{{"round", r.round},
            {"plan", r.plan},
            {"start_screen", ref(r.start_screen)},
            {"end_screen", ref(r.end_screen)},
            {"interrupted", r.interrupted},
            {"outcomes", r.outcomes}};
    if (r.decision)
      jr["decision"] = *r.decision;
    else
      jr["decision"] = nullptr;
    if (r.interrupted)
      jr["reflection"] = "interaction";
    else if (r.reflection)
      jr["reflection"] = *r.reflection;
    else
      jr["reflection"] = nullptr;
    PutOptional(jr, "decision_error", r.decision_error);
    rounds.push_back(std::move(jr));
  }
  j = Json{{"subtask_index", v.subtask_index},
           {"instruction", v.instruction},
           {"screens", screens},
           {"action_records", rounds},
           {"contexts", v.contexts},
           {"interaction_records", v.interaction_records},
           {"finished", v.finished},
           {"abort_reason", v.abort_reason}};
}

void from_json(const Json& j, FullExecutionRecord& v) {
  std::map<std::string, ScreenRef> screens;
  for (const auto& [id, s] : j.at("screens").items())
    screens[id] = std::make_shared<const ScreenPerception>(s.get<ScreenPerception>());
  auto deref = [&](const Json& id) -> ScreenRef {
    if (id.is_null()) return nullptr;
    auto it = screens.find(id.get<std::string>());
    if (it == screens.end())
      throw ValidationError("record references unknown screen " + id.dump());
    return it->second;
  };
  v.subtask_index = j.at("subtask_index").get<int>();
  v.instruction = j.at("instruction").get<std::string>();
  v.action_records.clear();
  for (const auto& jr : j.at("action_records")) {
    ActionLoopRecord r;
    r.round = jr.at("round").get<int>();
    r.plan = jr.at("plan").get<Plan>();
    if (!jr.at("decision").is_null()) r.decision = DecisionFromJson(jr.at("decision"));
    r.start_screen = deref(jr.at("start_screen"));
    r.end_screen = deref(jr.at("end_screen"));
    r.interrupted = ValueOr<bool>(jr, "interrupted", false);
    const Json& refl = jr.at("reflection");
    if (refl.is_object()) r.reflection = ReflectionFromJson(refl);
    r.outcomes = jr.at("outcomes").get<std::vector<ActionOutcome>>();
    r.decision_error = GetOptionalString(jr, "decision_error");
    v.action_records.push_back(std::move(r));
  }
  v.contexts = j.at("contexts").get<std::vector<KeyContext>>();
  v.interaction_records =
      j.at("interaction_records").get<std::vector<InteractionRecord>>();
  v.finished = ValueOr<bool>(j, "finished", false);
  v.abort_reason = ValueOr<std::string>(j, "abort_reason", "");
}

void to_json(Json& j, const TraceStep& v) {
  j = Json{{"round", v.round}};
  if (v.decision)
    j["decision"] = *v.decision;
  else
    j["decision"] = nullptr;
  if (v.reflection)
    j["reflection"] = *v.reflection;
  else
    j["reflection"] = nullptr;
}
void from_json(const Json& j, TraceStep& v) {
  v.round = j.at("round").get<int>();
  v.decision.reset();
  v.reflection.reset();
  if (!j.at("decision").is_null()) v.decision = DecisionFromJson(j.at("decision"));
  if (!j.at("reflection").is_null())
    v.reflection = ReflectionFromJson(j.at("reflection"));
}

void to_json(Json& j, const TraceSummary& v) {
  j = Json{{"instruction", v.instruction},
           {"final_subgoal", v.final_subgoal},
           {"steps", v.steps},
           {"final_context", v.final_context}};
}
void from_json(const Json& j, TraceSummary& v) {
  v.instruction = j.at("instruction").get<std::string>();
  v.final_subgoal = j.at("final_subgoal").get<std::string>();
  v.steps = j.at("steps").get<std::vector<TraceStep>>();
  v.final_context = j.at("final_context").get<KeyContext>();
}

void to_json(Json& j, const Trick& v) {
  j = Json{{"category", TrickCategoryName(v.category)},
           {"scope", v.scope},
           {"text", v.text},
           {"provenance", v.provenance}};
}
void from_json(const Json& j, Trick& v) {
  v.category = ParseTrickCategory(j.at("category").get<std::string>());
  v.scope = j.at("scope").get<std::string>();
  v.text = j.at("text").get<std::string>();
  v.provenance = ValueOr<std::string>(j, "provenance", "");
  if (v.text.empty()) throw ValidationError("trick text must be non-empty");
}

void to_json(Json& j, const Trigger& v) {
  j = Json{{"action_kind", v.action_kind}, {"effect_summary", v.effect_summary}};
  PutOptional(j, "destination_page_id", v.destination_page_id);
}
void from_json(const Json& j, Trigger& v) {
  v.action_kind = j.at("action_kind").get<std::string>();
  v.effect_summary = j.at("effect_summary").get<std::string>();
  v.destination_page_id = GetOptionalString(j, "destination_page_id");
}

void to_json(Json& j, const ComponentKnowledge& v) {
  j = Json{{"node_path", PathToString(v.node_path)},
           {"description", v.description},
           {"triggers", v.triggers}};
}
void from_json(const Json& j, ComponentKnowledge& v) {
  v.node_path = ParsePath(j.at("node_path").get<std::string>());
  v.description = j.at("description").get<std::string>();
  v.triggers = j.at("triggers").get<std::vector<Trigger>>();
}

void to_json(Json& j, const Page& v) {
  j = Json{{"page_id", v.page_id},
           {"canonical_tree", v.canonical_tree},
           {"components", v.components}};
}
void from_json(const Json& j, Page& v) {
  v.page_id = j.at("page_id").get<std::string>();
  v.canonical_tree = j.at("canonical_tree").get<UiNode>();
  v.components = j.at("components").get<std::vector<ComponentKnowledge>>();
}

void to_json(Json& j, const AppMap& v) {
  j = Json{{"app", v.app}, {"pages", v.pages}};
}
void from_json(const Json& j, AppMap& v) {
  v.app = j.at("app").get<std::string>();
  v.pages = j.at("pages").get<std::vector<Page>>();
}

std::uint64_t Fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string ContentId(const std::string& prefix, const Json& value) {
  return prefix + Hex64(Fnv1a64(value.dump()));
}

std::string ComputePerceptionId(const ScreenPerception& p) {
  Json j{{"screenshot", p.screenshot},
         {"tree", p.tree},
         {"marks", p.set_of_marks},
         {"textual", p.textual},
         {"mode", PerceptionModeName(p.mode)}};
  return ContentId("s-", j);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
}

Json ReadJsonFile(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const Json& value) {
  WriteFile(path, value.dump(2) + "\n");
}

}  // namespace mobagent
