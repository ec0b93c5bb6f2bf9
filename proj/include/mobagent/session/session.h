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


// One user session: metadata, global plan, then per sub-task dispatch ->
// action loop -> learning -> global adjustment, until the global planner
// declares the plan complete or a sub-task aborts.

#ifndef MOBAGENT_SESSION_SESSION_H_
#define MOBAGENT_SESSION_SESSION_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mobagent/executor/action_loop.h"
#include "mobagent/learning/app_map.h"
#include "mobagent/learning/tricks.h"
#include "mobagent/planning/global_task_manager.h"

namespace mobagent {

struct SessionConfig {
  PerceptionMode perception = PerceptionMode::kVisual;
  bool recover_overlooked = false;
  ExecutorOptions executor;
  GlobalManagerOptions global;
  // Holds tricks/ and maps/. Empty keeps knowledge in memory only.
  std::filesystem::path knowledge_dir;
  bool learn = true;
  bool save_knowledge = true;
  // Map descriptions and effects from the summarizer role instead of the
  // built-in text heuristics.
  bool model_descriptions = true;
  int subtask_cap = 10;
};

struct SessionResult {
  std::string instruction;
  GlobalPlan plan;
  std::vector<ExecutionResult> subtasks;
  bool success = false;
  bool aborted = false;
  std::string abort_reason;
  std::vector<Trick> learned_tricks;
  MapLearnStats map_stats;
};

nlohmann::json SessionResultToJson(const SessionResult& r);

class Session {
 public:
  // `tricks` may be null: the session then loads its own store from the
  // knowledge directory.
  Session(SessionConfig config, ModelProvider* provider, DeviceBackend* device,
          DialogChannel* channel, EventLog* events, TrickStore* tricks = nullptr);

  // Throws PlanValidationError / MalformedResponse / ProviderUnavailable
  // when no global plan can be made; sub-task failures are reported in the
  // result instead.
  SessionResult Run(const std::string& instruction);

  const TrickStore& tricks() const { return *tricks_; }
  const AppMap& Map(const std::string& app);

 private:
  void Learn(const ExecutionResult& run, const std::string& app, int index, SessionResult& out);
  void Emit(const std::string& type, const nlohmann::json& data);

  SessionConfig config_;
  ModelProvider* provider_;
  DeviceBackend* device_;
  DialogChannel* channel_;
  EventLog* events_;
  std::unique_ptr<TrickStore> owned_tricks_;
  TrickStore* tricks_;
  std::map<std::string, AppMap> maps_;
};

}  // namespace mobagent

#endif  // MOBAGENT_SESSION_SESSION_H_
