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


// The action loop of one sub-task. Round t: (reflect on round t-1 and
// adjust the plan) -> (clarify with the user when asked) -> decide ->
// resolve marks -> execute -> perceive. The end screen of round t is the
// start screen of round t+1. Round 0 plans directly, and the round after a
// dialog goes straight to the decider since nothing ran in between.

#ifndef MOBAGENT_EXECUTOR_ACTION_LOOP_H_
#define MOBAGENT_EXECUTOR_ACTION_LOOP_H_

#include <filesystem>
#include <string>
#include <vector>

#include "mobagent/core/errors.h"
#include "mobagent/core/types.h"
#include "mobagent/device/device.h"
#include "mobagent/interaction/channels.h"
#include "mobagent/interaction/interaction_loop.h"
#include "mobagent/learning/app_map.h"
#include "mobagent/learning/tricks.h"
#include "mobagent/perception/perceptor.h"
#include "mobagent/runtime/provider.h"
#include "mobagent/session/event_log.h"

namespace mobagent {

enum class ReflectionPolicy { kHybrid, kStandalone };
const char* ReflectionPolicyName(ReflectionPolicy p);
ReflectionPolicy ParseReflectionPolicy(const std::string& s);

enum class ContextPolicy { kAuto, kAlways, kNever };
ContextPolicy ParseContextPolicy(const std::string& s);

struct ExecutorOptions {
  ReflectionPolicy policy = ReflectionPolicy::kHybrid;
  int memory_window = 3;
  int round_cap = 40;
  int revision_budget = 3;
  int interaction_cap = kDefaultInteractionCap;
  int trick_top_k = kDefaultTopK;
  // kAuto extracts only when the sub-task carries a context request.
  ContextPolicy context = ContextPolicy::kAuto;
  std::filesystem::path som_dir;  // marked screenshots; empty disables
};

struct ExecutorDeps {
  ModelProvider* provider = nullptr;
  DeviceBackend* device = nullptr;
  const ScreenPerceptor* perceptor = nullptr;
  const TrickStore* tricks = nullptr;  // optional
  const AppMap* map = nullptr;         // optional
  DialogChannel* channel = nullptr;    // optional; without one a dialog aborts
  EventLog* events = nullptr;          // optional
};

struct ExecutionResult {
  FullExecutionRecord record;
  TraceSummary trace;
  std::vector<ActionTransition> transitions;  // executed rounds, for map learning
};

class TaskAborted : public Error {
 public:
  TaskAborted(const std::string& what, ExecutionResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const ExecutionResult& partial() const { return partial_; }

 private:
  ExecutionResult partial_;
};

struct SubTaskInput {
  std::string instruction;      // I_T
  std::string context_request;  // G_cr
  std::string app;
  int subtask_index = 0;
};

// Runs until a Finish decision. Throws TaskAborted carrying the partial
// record on the round cap, an exhausted revision budget, a failed dialog
// or an unrecoverable provider/perception error.
ExecutionResult RunActionLoop(const SubTaskInput& input, const ExecutorDeps& deps,
                              const ExecutorOptions& options);

}  // namespace mobagent

#endif  // MOBAGENT_EXECUTOR_ACTION_LOOP_H_
