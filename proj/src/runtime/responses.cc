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

#include "mobagent/runtime/responses.h"

#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"

namespace mobagent {

namespace {

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw SchemaError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string StringField(const Json& j, const char* name, bool required) {
  if (!j.is_object() || !j.contains(name) || j.at(name).is_null()) {
    if (required) throw SchemaError(std::string("missing field '") + name + "'");
    return "";
  }
  if (!j.at(name).is_string())
    throw SchemaError(std::string("field '") + name + "' must be a string");
  return j.at(name).get<std::string>();
}

std::vector<std::string> StringList(const Json& j, const char* name) {
  std::vector<std::string> out;
  if (!j.contains(name) || j.at(name).is_null()) return out;
  if (!j.at(name).is_array()) throw SchemaError(std::string("'") + name + "' must be a list");
  for (const auto& e : j.at(name)) {
    if (!e.is_string()) throw SchemaError(std::string("'") + name + "' must hold strings");
    const std::string s = Trim(e.get<std::string>());
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

Reflection ParseReflection(const Json& r) {
  const std::string code = StringField(r, "action_result", true);
  if (code != "A" && code != "B" && code != "C" && code != "D")
    throw SchemaError("action_result must be one of A, B, C, D");
  std::optional<std::string> cause;
  if (r.contains("error_cause") && !r.at("error_cause").is_null()) {
    std::string c = StringField(r, "error_cause", false);
    if (!Trim(c).empty()) cause = c;
  }
  const ActionResult result = ParseActionResult(code);
  if (IsFailure(result) != cause.has_value())
    throw SchemaError("error_cause must be present exactly for results C and D");
  return Reflection(result, StringField(r, "plan_progress", false), cause);
}

}  // namespace

Json ExtractStructured(const std::string& raw) {
  const std::string fence = "```json";
  size_t start = raw.find(fence);
  std::string body;
  if (start != std::string::npos) {
    start += fence.size();
    const size_t end = raw.find("```", start);
    if (end == std::string::npos) throw SchemaError("unterminated ```json block");
    body = raw.substr(start, end - start);
  } else {
    body = raw;
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("response is not valid JSON: ") + e.what());
  }
}

GlobalPlannerResponse ParseGlobalPlanner(const Json& j) {
  GlobalPlannerResponse r;
  if (j.contains("overall_plan")) {
    if (!j.at("overall_plan").is_array()) throw SchemaError("'overall_plan' must be a list");
    for (const auto& item : j.at("overall_plan")) {
      PlannedSubTask p;
      p.subtask.raw_instruction = StringField(item, "raw_instruction", true);
      p.subtask.target_package = StringField(item, "target_package", true);
      p.subtask.context_request = StringField(item, "context_request", false);
      p.description = StringField(item, "description", false);
      if (p.description.empty()) p.description = p.subtask.raw_instruction;
      if (p.subtask.raw_instruction.empty() || p.subtask.target_package.empty())
        throw SchemaError("sub-task needs raw_instruction and target_package");
      r.overall_plan.push_back(std::move(p));
    }
  }
  r.verdict = StringField(j, "verdict", false);
  if (!r.verdict.empty() && r.verdict != "done" && r.verdict != "revised")
    throw SchemaError("verdict must be 'done' or 'revised'");
  if (j.contains("complete")) {
    if (!j.at("complete").is_boolean()) throw SchemaError("'complete' must be a boolean");
    r.complete = j.at("complete").get<bool>();
  }
  r.context_carryover = StringField(j, "context_carryover", false);
  return r;
}

ReplanResponse ParseReplan(const Json& j, bool need_reflection, bool need_plan) {
  ReplanResponse r;
  if (j.contains("reflection") && !j.at("reflection").is_null())
    r.reflection = ParseReflection(j.at("reflection"));
  else if (need_reflection)
    throw SchemaError("missing field 'reflection'");
  if (j.contains("plan") && !j.at("plan").is_null()) {
    const Json& p = j.at("plan");
    PlanProposal proposal;
    const Json& items = Field(p, "overall_plan");
    if (!items.is_array()) throw SchemaError("'overall_plan' must be a list");
    for (const auto& item : items) {
      std::string d = item.is_string() ? item.get<std::string>()
                                       : StringField(item, "description", true);
      d = Trim(d);
      if (!d.empty()) proposal.overall_plan.push_back(d);
    }
    if (proposal.overall_plan.empty()) throw SchemaError("plan has no sub-goals");
    proposal.current_subgoal = Trim(StringField(p, "current_subgoal", false));
    if (proposal.current_subgoal.empty()) proposal.current_subgoal = proposal.overall_plan[0];
    r.plan = std::move(proposal);
  } else if (need_plan) {
    throw SchemaError("missing field 'plan'");
  }
  if (j.contains("interaction") && !j.at("interaction").is_null()) {
    const Json& i = j.at("interaction");
    if (!i.contains("interaction_type") || !i.at("interaction_type").is_number_integer())
      throw SchemaError("interaction_type must be an integer 0-4");
    r.interaction = InteractionRequest(i.at("interaction_type").get<int>(),
                                       StringField(i, "rationale", false));
  }
  return r;
}

ActionDecision ParseDecision(const Json& j) {
  const Json& actions = Field(j, "actions");
  if (!actions.is_array() || actions.empty())
    throw SchemaError("'actions' must be a non-empty list");
  std::vector<AtomicAction> seq;
  for (const auto& a : actions) seq.push_back(ActionFromJson(a));
  return ActionDecision(std::move(seq), StringField(j, "expected_result", false));
}

std::string ParseStringField(const Json& j, const char* field) {
  return StringField(j, field, true);
}

InteractorResponse ParseInteractor(const Json& j) {
  InteractorResponse r;
  const Json& status = Field(j, "status");
  if (!status.is_number_integer() || (status.get<int>() != 0 && status.get<int>() != 1))
    throw SchemaError("status must be 0 or 1");
  r.status = status.get<int>();
  if (r.status == 0) {
    r.prompt = Trim(StringField(j, "prompt", true));
    if (r.prompt.empty()) throw SchemaError("prompt must be non-empty");
    r.options = StringList(j, "options");
  } else {
    const std::string s = Trim(StringField(j, "summary", true));
    if (s.empty()) throw SchemaError("summary must be non-empty when status is 1");
    r.summary = s;
  }
  return r;
}

TrickLearnerResponse ParseTrickLearner(const Json& j) {
  if (!j.is_object()) throw SchemaError("trick learner answer must be an object");
  return {StringList(j, "planning"), StringList(j, "execution"),
          StringList(j, "error_recovery")};
}

JudgeResponse ParseJudge(const Json& j) {
  const Json& v = Field(j, "verdict");
  if (!v.is_boolean()) throw SchemaError("verdict must be a boolean");
  return {v.get<bool>(), StringField(j, "reason", false)};
}

}  // namespace mobagent
