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


#include "mobagent/session/session.h"

#include "mobagent/core/serialization.h"
#include "mobagent/perception/providers.h"
#include "mobagent/runtime/role_adapters.h"

namespace mobagent {

Json SessionResultToJson(const SessionResult& r) {
  Json subtasks = Json::array();
  for (const auto& s : r.subtasks)
    subtasks.push_back({{"instruction", s.record.instruction},
                        {"rounds", s.record.action_records.size()},
                        {"finished", s.record.finished},
                        {"abort_reason", s.record.abort_reason}});
  return {{"instruction", r.instruction},
          {"plan", r.plan},
          {"subtasks", subtasks},
          {"success", r.success},
          {"aborted", r.aborted},
          {"abort_reason", r.abort_reason},
          {"learned_tricks", r.learned_tricks},
          {"map_stats",
           {{"pages_created", r.map_stats.pages_created},
            {"pages_patched", r.map_stats.pages_patched},
            {"components_added", r.map_stats.components_added},
            {"triggers_added", r.map_stats.triggers_added},
            {"failures", r.map_stats.failures}}}};
}

Session::Session(SessionConfig config, ModelProvider* provider, DeviceBackend* device,
                 DialogChannel* channel, EventLog* events, TrickStore* tricks)
    : config_(std::move(config)),
      provider_(provider),
      device_(device),
      channel_(channel),
      events_(events),
      tricks_(tricks) {
  if (!tricks_) {
    owned_tricks_ = std::make_unique<TrickStore>();
    if (!config_.knowledge_dir.empty()) owned_tricks_->Load(config_.knowledge_dir);
    tricks_ = owned_tricks_.get();
  }
}

void Session::Emit(const std::string& type, const Json& data) {
  if (events_) events_->Append(type, data);
}

const AppMap& Session::Map(const std::string& app) {
  auto it = maps_.find(app);
  if (it == maps_.end()) {
    AppMap m = config_.knowledge_dir.empty() ? AppMap{app, {}}
                                             : LoadAppMap(config_.knowledge_dir, app);
    it = maps_.emplace(app, std::move(m)).first;
  }
  return it->second;
}

SessionResult Session::Run(const std::string& instruction) {
  SessionResult out;
  out.instruction = instruction;
  Emit("session_start", {{"instruction", instruction}});
  GlobalTaskManager gtm(provider_, events_, config_.global);
  const auto metadata = gtm.RefreshMetadata(*device_);
  out.plan = gtm.PlanInitial(instruction, metadata);

  SimulatedOcr ocr;
  ScriptedCaptioner captioner;
  ConcatSummarizer summarizer;
  ScreenPerceptor perceptor({config_.perception, config_.recover_overlooked},
                            {&ocr, &captioner, &summarizer});

  for (int j = 0; j < config_.subtask_cap && !out.plan.complete; ++j) {
    const std::string instr = gtm.Dispatch(out.plan, *device_);
    const SubTask sub = *out.plan.current_subtask();
    const std::string app = sub.target_package;
    ExecutorDeps deps{provider_, device_, &perceptor, tricks_, &Map(app), channel_, events_};
    ExecutorOptions opts = config_.executor;
    if (!opts.som_dir.empty()) opts.som_dir /= std::to_string(j);
    SubTaskInput input{instr, sub.context_request, app, j};
    ExecutionResult run;
    try {
      run = RunActionLoop(input, deps, opts);
    } catch (const TaskAborted& e) {
      out.subtasks.push_back(e.partial());
      out.aborted = true;
      out.abort_reason = e.what();
      Emit("subtask_aborted", {{"index", j}, {"reason", e.what()}});
      Learn(e.partial(), app, j, out);
      break;
    }
    out.subtasks.push_back(run);
    Emit("subtask_finished", {{"index", j}, {"rounds", run.record.action_records.size()}});
    Learn(run, app, j, out);
    out.plan = gtm.AdjustGlobal(instruction, run.trace, out.plan, metadata);
  }
  out.success = out.plan.complete && !out.aborted;
  if (!out.plan.complete && !out.aborted) {
    out.aborted = true;
    out.abort_reason = "sub-task cap of " + std::to_string(config_.subtask_cap) + " reached";
  }
  Emit("session_end", {{"success", out.success}, {"abort_reason", out.abort_reason}});
  return out;
}

void Session::Learn(const ExecutionResult& run, const std::string& app, int index,
                    SessionResult& out) {
  if (!config_.learn) return;
  try {
    const auto deltas = LearnTricks(*provider_, run.record, app,
                                    "session subtask " + std::to_string(index), *tricks_);
    out.learned_tricks.insert(out.learned_tricks.end(), deltas.added.begin(),
                              deltas.added.end());
    Emit("tricks_learned", {{"app", app}, {"added", deltas.added}});
  } catch (const Error& e) {
    Emit("learning_gap", {{"app", app}, {"what", "tricks"}, {"error", e.what()}});
  }

  RoleDescriber role_describer(provider_);
  RoleEffectSummarizer role_effects(provider_);
  TextDescriber text_describer;
  DiffEffectSummarizer diff_effects;
  MapLearnOptions mo;
  mo.describer = config_.model_descriptions ? static_cast<const ComponentDescriber*>(&role_describer)
                                            : &text_describer;
  mo.effects = config_.model_descriptions ? static_cast<const EffectSummarizer*>(&role_effects)
                                          : &diff_effects;
  MapLearnStats stats;
  AppMap learned = LearnAppMap(run.transitions, Map(app), mo, &stats);
  maps_[app] = learned;
  out.map_stats.pages_created += stats.pages_created;
  out.map_stats.pages_patched += stats.pages_patched;
  out.map_stats.components_added += stats.components_added;
  out.map_stats.triggers_added += stats.triggers_added;
  out.map_stats.failures += stats.failures;
  Emit("map_learned", {{"app", app},
                       {"pages", learned.pages.size()},
                       {"triggers", learned.TriggerCount()},
                       {"failures", stats.failures}});
  if (config_.save_knowledge && !config_.knowledge_dir.empty()) {
    SaveAppMap(config_.knowledge_dir, learned);
    tricks_->Save(config_.knowledge_dir);
  }
}

}  // namespace mobagent
