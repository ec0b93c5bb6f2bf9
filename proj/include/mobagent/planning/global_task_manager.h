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


// Global task manager: app metadata, the cross-app plan, dispatch of the
// active sub-task and the carry-over of context between sub-tasks.

#ifndef MOBAGENT_PLANNING_GLOBAL_TASK_MANAGER_H_
#define MOBAGENT_PLANNING_GLOBAL_TASK_MANAGER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "mobagent/core/types.h"
#include "mobagent/device/device.h"
#include "mobagent/runtime/provider.h"
#include "mobagent/session/event_log.h"

namespace mobagent {

inline constexpr std::size_t kDefaultCarryoverCap = 4000;

struct GlobalManagerOptions {
  std::size_t carryover_cap = kDefaultCarryoverCap;
};

std::string RenderAppMetadata(const std::vector<AppMetadata>& metadata);
std::string RenderGlobalPlan(const GlobalPlan& plan);
std::string RenderTrace(const TraceSummary& trace);

// Appends `entry` as a new line and drops the oldest lines until the text
// fits `cap`; a single oversized entry keeps its last `cap` characters.
std::string AppendCarryover(const std::string& carryover, const std::string& entry,
                            std::size_t cap);

class GlobalTaskManager {
 public:
  GlobalTaskManager(ModelProvider* provider, EventLog* events,
                    GlobalManagerOptions options = {});

  // One entry per installed app. Apps without a description get one from
  // the summarizer role, or their display name when that role fails.
  std::vector<AppMetadata> RefreshMetadata(const DeviceBackend& device);

  // Throws PlanValidationError after one retry when the planner names an
  // app outside `metadata` or returns no sub-task.
  GlobalPlan PlanInitial(const std::string& instruction,
                         const std::vector<AppMetadata>& metadata);

  // Closes the active sub-task as done or revised, replaces the pending
  // suffix when the planner supplies one, merges the trace's context into
  // the carry-over and activates the next sub-task. Done items never change.
  GlobalPlan AdjustGlobal(const std::string& instruction, const TraceSummary& trace,
                          const GlobalPlan& plan, const std::vector<AppMetadata>& metadata);

  // Starts the active sub-task's app and sets its rewritten instruction.
  // Throws AppNotFound; the rewriter is not consulted with no carry-over.
  std::string Dispatch(GlobalPlan& plan, DeviceBackend& device);

 private:
  void Emit(const std::string& type, const nlohmann::json& data);

  ModelProvider* provider_;
  EventLog* events_;
  GlobalManagerOptions options_;
};

}  // namespace mobagent

#endif  // MOBAGENT_PLANNING_GLOBAL_TASK_MANAGER_H_
