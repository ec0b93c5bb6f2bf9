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

// Typed role responses and the schema gate. A response's structured part is
// the first ```json fenced block of the raw text, or the raw text itself
// when it is bare JSON. Every parser throws SchemaError on a shape it does
// not accept; Complete() turns that into a bounded retry.
//
// Wire shapes:
//   global_planner   {"overall_plan": [{"description", "raw_instruction",
//                     "context_request", "target_package"}],
//                     "verdict": "done"|"revised", "complete": bool,
//                     "context_carryover": str}
//   replanner        {"reflection": {...}?, "plan": {...}, "interaction": {...}}
//   reflector        {"reflection": {"action_result", "plan_progress",
//                     "error_cause"}}
//   planner          {"plan": {"overall_plan": [str], "current_subgoal": str},
//                     "interaction": {"interaction_type", "rationale"}}
//   action_decider   {"actions": [...], "expected_result": str}
//   context_extractor {"extraction": str}
//   user_interactor  {"status": 0, "prompt": str, "options": [str]} or
//                    {"status": 1, "summary": str}
//   trick_learner    {"planning": [str], "execution": [str],
//                     "error_recovery": [str]}
//   captioner        {"caption": str}    summarizer {"summary": str}
//   rewriter         {"instruction": str}
//   judge            {"verdict": bool, "reason": str}
//   task_driver      {"reply": str}

#ifndef MOBAGENT_RUNTIME_RESPONSES_H_
#define MOBAGENT_RUNTIME_RESPONSES_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mobagent/core/errors.h"
#include "mobagent/core/types.h"
#include "mobagent/runtime/provider.h"

namespace mobagent {

inline constexpr int kDefaultRetries = 2;

// Structured part of a raw response. Throws SchemaError.
nlohmann::json ExtractStructured(const std::string& raw);

struct PlannedSubTask {
  std::string description;
  SubTask subtask;
};

struct GlobalPlannerResponse {
  std::vector<PlannedSubTask> overall_plan;
  std::string verdict;  // "done" | "revised" | "" on the initial plan
  bool complete = false;
  std::string context_carryover;
};

struct PlanProposal {
  std::vector<std::string> overall_plan;  // non-empty
  std::string current_subgoal;
};

struct ReplanResponse {
  std::optional<Reflection> reflection;
  std::optional<PlanProposal> plan;
  InteractionRequest interaction;
};

struct InteractorResponse {
  int status = 0;
  std::string prompt;
  std::vector<std::string> options;
  std::optional<std::string> summary;
};

struct TrickLearnerResponse {
  std::vector<std::string> planning;
  std::vector<std::string> execution;
  std::vector<std::string> error_recovery;
};

struct JudgeResponse {
  bool verdict = false;
  std::string reason;
};

GlobalPlannerResponse ParseGlobalPlanner(const nlohmann::json& j);
// `need_reflection` / `need_plan` select which parts are mandatory.
ReplanResponse ParseReplan(const nlohmann::json& j, bool need_reflection, bool need_plan);
ActionDecision ParseDecision(const nlohmann::json& j);
std::string ParseStringField(const nlohmann::json& j, const char* field);
InteractorResponse ParseInteractor(const nlohmann::json& j);
TrickLearnerResponse ParseTrickLearner(const nlohmann::json& j);
JudgeResponse ParseJudge(const nlohmann::json& j);

template <class T>
struct RoleResponse {
  T parsed;
  std::string raw;
  int attempts = 1;
};

// Calls the provider, extracts and validates. On a schema failure retries
// up to `retries` times with a repair_hint section describing the problem,
// then throws MalformedResponse. ProviderUnavailable propagates.
template <class T>
RoleResponse<T> Complete(ModelProvider& provider, RoleRequest request,
                         const std::function<T(const nlohmann::json&)>& parse,
                         int retries = kDefaultRetries) {
  std::string last_error;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    if (attempt > 0)
      request.Set("repair_hint", "The previous answer was rejected: " + last_error +
                                     ". Answer again with one ```json block.");
    std::string raw = provider.Complete(request);
    try {
      return {parse(ExtractStructured(raw)), std::move(raw), attempt + 1};
    } catch (const SchemaError& e) {
      last_error = e.what();
    } catch (const ValidationError& e) {
      last_error = e.what();
    } catch (const nlohmann::json::exception& e) {
      last_error = e.what();
    }
  }
  throw MalformedResponse(std::string(RoleName(request.role())) + " response rejected after " +
                          std::to_string(retries + 1) + " attempts: " + last_error);
}

}  // namespace mobagent

#endif  // MOBAGENT_RUNTIME_RESPONSES_H_
