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


// Runs task specs end to end and writes run directories:
//
//   <runs>/<task>/<mode>/record.json      full execution records
//                        trace.json       trace summaries
//                        transcript.json  driver dialog
//                        report.json      metrics
//                        session.json     global plan and learning stats
//                        events.jsonl     session event stream
//                        cassette.jsonl   provider answers (record mode)
//                        knowledge/       tricks and maps after the run
//                        som/             marked screenshots per round
//
// A task directory holds task.spec, script.json (scripted provider),
// device/ (fixture apps) and optionally knowledge/ (seed tricks and maps).

#ifndef MOBAGENT_EVAL_RUNNER_H_
#define MOBAGENT_EVAL_RUNNER_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "mobagent/eval/driver.h"
#include "mobagent/eval/judges.h"
#include "mobagent/eval/metrics.h"
#include "mobagent/eval/task_spec.h"
#include "mobagent/runtime/provider.h"
#include "mobagent/session/session.h"

namespace mobagent {

enum class ProviderKind { kScripted, kReplay, kRecord };
ProviderKind ParseProviderKind(const std::string& s);

struct ProviderConfig {
  ProviderKind kind = ProviderKind::kScripted;
  std::vector<std::filesystem::path> scripts;  // later files win
  std::filesystem::path cassette;              // replay input
};

// Owns a provider chain: base (scripted or replay), optional recorder, and
// a call counter on top.
class ProviderStack {
 public:
  // Throws ProviderUnavailable for a missing cassette, ValidationError for
  // a bad script.
  explicit ProviderStack(const ProviderConfig& config);
  ModelProvider& provider() { return *counting_; }
  int calls() const { return counting_->total(); }
  int misses() const;
  // Writes the cassette when recording; no-op otherwise.
  void SaveCassette(const std::filesystem::path& path) const;

 private:
  std::unique_ptr<ModelProvider> base_;
  std::unique_ptr<RecordingProvider> recorder_;
  std::unique_ptr<CountingProvider> counting_;
};

struct TaskRunOptions {
  SessionConfig session;
  DriveMode mode = DriveMode::kClear;
  std::string judge = "evidence";  // evidence | model
  ProviderKind provider = ProviderKind::kScripted;
  std::vector<std::filesystem::path> extra_scripts;  // loaded before the task's own
  std::filesystem::path cassette;  // replay input; default <run dir>/cassette.jsonl
  std::filesystem::path runs_dir = "runs";
  std::filesystem::path device_fixture;  // overrides <task>/device
  bool seed_knowledge = true;            // copy <task>/knowledge into the run
  // Answers prompts instead of the scripted driver (the transcript then
  // stays empty). Not owned.
  DialogChannel* channel = nullptr;
};

struct TaskRunResult {
  TaskSpec spec;
  SessionResult session;
  MetricsReport report;
  Transcript transcript;
  std::filesystem::path run_dir;
  int provider_calls = 0;
  int provider_misses = 0;
  bool hard_error = false;
  std::string error;
};

TaskRunResult RunTask(const std::filesystem::path& task_dir, const TaskRunOptions& options);

// Task directories (those holding task.spec) in name order.
std::vector<std::filesystem::path> FindTasks(const std::filesystem::path& suite_dir);

struct SuiteResult {
  std::vector<TaskRunResult> tasks;
  std::vector<AggregateRow> aggregate;
};

// Runs every task (in parallel, one device each) and writes
// <runs>/aggregate.json and aggregate.txt.
SuiteResult RunSuite(const std::filesystem::path& suite_dir, const TaskRunOptions& options);

}  // namespace mobagent

#endif  // MOBAGENT_EVAL_RUNNER_H_
