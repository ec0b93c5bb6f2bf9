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


#include "mobagent/eval/runner.h"

#include <algorithm>
#include <future>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/device/sim_device.h"

namespace mobagent {

ProviderKind ParseProviderKind(const std::string& s) {
  const std::string v = ToLower(Trim(s));
  if (v == "scripted") return ProviderKind::kScripted;
  if (v == "replay") return ProviderKind::kReplay;
  if (v == "record") return ProviderKind::kRecord;
  throw ValidationError("provider must be scripted, replay or record, got '" + s + "'");
}

ProviderStack::ProviderStack(const ProviderConfig& config) {
  if (config.kind == ProviderKind::kReplay) {
    if (!std::filesystem::exists(config.cassette))
      throw ProviderUnavailable("cassette not found: " + config.cassette.string());
    base_ = std::make_unique<ReplayProvider>(LoadCassette(config.cassette));
  } else {
    base_ = std::make_unique<ScriptedProvider>(ScriptedProvider::FromFiles(config.scripts));
  }
  ModelProvider* top = base_.get();
  if (config.kind == ProviderKind::kRecord) {
    recorder_ = std::make_unique<RecordingProvider>(top);
    top = recorder_.get();
  }
  counting_ = std::make_unique<CountingProvider>(top);
}

int ProviderStack::misses() const {
  if (auto* replay = dynamic_cast<const ReplayProvider*>(base_.get())) return replay->misses();
  return 0;
}

void ProviderStack::SaveCassette(const std::filesystem::path& path) const {
  if (recorder_) recorder_->Save(path);
}

namespace {

void CopyTree(const std::filesystem::path& from, const std::filesystem::path& to) {
  std::filesystem::create_directories(to);
  if (std::filesystem::is_directory(from))
    std::filesystem::copy(from, to,
                          std::filesystem::copy_options::recursive |
                              std::filesystem::copy_options::overwrite_existing);
}

Json RecordsJson(const SessionResult& s) {
  Json records = Json::array();
  for (const auto& r : s.subtasks) records.push_back(r.record);
  return {{"subtasks", records}};
}

Json TracesJson(const SessionResult& s) {
  Json traces = Json::array();
  for (const auto& r : s.subtasks) traces.push_back(r.trace);
  return traces;
}

}  // namespace

TaskRunResult RunTask(const std::filesystem::path& task_dir, const TaskRunOptions& options) {
  TaskRunResult out;
  out.spec = LoadTaskSpec(task_dir / "task.spec");
  out.run_dir = options.runs_dir / out.spec.id / DriveModeName(options.mode);
  std::filesystem::remove_all(out.run_dir / "knowledge");
  std::filesystem::remove_all(out.run_dir / "som");
  std::filesystem::create_directories(out.run_dir);

  ProviderConfig pc;
  pc.kind = options.provider;
  pc.scripts = options.extra_scripts;
  pc.scripts.push_back(task_dir / "script.json");
  pc.cassette = options.cassette.empty() ? out.run_dir / "cassette.jsonl" : options.cassette;
  ProviderStack providers(pc);

  const auto fixture = options.device_fixture.empty() ? task_dir / "device" : options.device_fixture;
  SimDevice device(LoadScreenGraph(fixture));

  SessionConfig sc = options.session;
  sc.knowledge_dir = out.run_dir / "knowledge";
  if (options.seed_knowledge) CopyTree(task_dir / "knowledge", sc.knowledge_dir);
  else std::filesystem::create_directories(sc.knowledge_dir);
  if (sc.executor.som_dir.empty()) sc.executor.som_dir = out.run_dir / "som";

  EventLog events(out.run_dir / "events.jsonl");
  ScriptedDriver driver(out.spec);
  const std::string instruction = driver.Instruction(options.mode);
  DialogChannel* channel = options.channel ? options.channel : &driver;
  Session session(sc, &providers.provider(), &device, channel, &events);
  try {
    out.session = session.Run(instruction);
  } catch (const Error& e) {
    out.hard_error = true;
    out.error = e.what();
    out.session.instruction = instruction;
    out.session.aborted = true;
    out.session.abort_reason = e.what();
  }
  events.Close();
  out.transcript = driver.transcript();
  if (out.session.aborted) out.hard_error = true;
  if (out.error.empty()) out.error = out.session.abort_reason;

  EvaluationInput in;
  in.spec = &out.spec;
  for (const auto& s : out.session.subtasks) in.records.push_back(s.record);
  in.activity = device.ActivityLog();
  in.transcript = out.transcript;
  EvidenceJudge evidence;
  ModelJudge model(&providers.provider());
  TaskJudge& judge = options.judge == "model" ? static_cast<TaskJudge&>(model) : evidence;
  out.report = Evaluate(in, judge, options.mode);
  out.report.hard_error = out.hard_error;
  out.report.note = out.error;

  out.provider_calls = providers.calls();
  out.provider_misses = providers.misses();
  WriteJsonFile(out.run_dir / "record.json", RecordsJson(out.session));
  WriteJsonFile(out.run_dir / "trace.json", TracesJson(out.session));
  WriteJsonFile(out.run_dir / "transcript.json", TranscriptToJson(out.transcript));
  WriteJsonFile(out.run_dir / "report.json", MetricsToJson(out.report));
  WriteJsonFile(out.run_dir / "session.json", SessionResultToJson(out.session));
  if (options.provider == ProviderKind::kRecord)
    providers.SaveCassette(out.run_dir / "cassette.jsonl");
  return out;
}

std::vector<std::filesystem::path> FindTasks(const std::filesystem::path& suite_dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(suite_dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(suite_dir))
    if (e.is_directory() && std::filesystem::exists(e.path() / "task.spec"))
      out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

SuiteResult RunSuite(const std::filesystem::path& suite_dir, const TaskRunOptions& options) {
  SuiteResult out;
  std::vector<std::future<TaskRunResult>> jobs;
  for (const auto& task : FindTasks(suite_dir))
    jobs.push_back(std::async(std::launch::async, [task, &options] {
      return RunTask(task, options);
    }));
  std::vector<MetricsReport> reports;
  for (auto& j : jobs) {
    out.tasks.push_back(j.get());
    reports.push_back(out.tasks.back().report);
  }
  out.aggregate = Aggregate(reports);
  WriteJsonFile(options.runs_dir / "aggregate.json", AggregateToJson(out.aggregate));
  WriteFile(options.runs_dir / "aggregate.txt", RenderAggregateTable(out.aggregate));
  return out;
}

}  // namespace mobagent
