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


// Exit gate. Prints one PASS/FAIL line per acceptance criterion and exits
// non-zero when any fails. Seeds, sample sizes and time limits are pinned.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/device/sim_device.h"
#include "mobagent/eval/driver.h"
#include "mobagent/eval/runner.h"
#include "mobagent/eval/task_spec.h"
#include "mobagent/executor/action_loop.h"
#include "mobagent/learning/app_map.h"
#include "mobagent/learning/similarity.h"
#include "mobagent/perception/perceptor.h"
#include "mobagent/perception/tree.h"
#include "mobagent/runtime/provider.h"
#include "testing/loop_protocol.h"
#include "testing/metrics_oracle.h"
#include "testing/properties.h"
#include "testing/test_util.h"

namespace mobagent {
namespace {

using Json = nlohmann::json;
using testing::CommonScript;
using testing::FixtureDir;
using testing::ReadText;
using testing::ScratchDir;
using testing::SuiteDir;

// Criterion outcome: empty `failure` means pass; `detail` is always shown.
struct Outcome {
  std::string failure;
  std::string detail;
};

class Gate {
 public:
  void Run(const std::string& name, double limit_s, const std::function<Outcome()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.failure = std::string("exception: ") + e.what();
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.failure.empty() && limit_s > 0 && s >= limit_s)
      o.failure = "too slow (" + Fmt(s) + "s >= " + Fmt(limit_s) + "s)";
    const bool pass = o.failure.empty();
    failed_ += !pass;
    std::printf("%s  %-22s %s; %.3fs%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str(), s, limit_s > 0 ? (" < " + Fmt(limit_s) + "s").c_str() : "",
                pass ? "" : ("  -- " + o.failure).c_str());
    std::fflush(stdout);
  }
  int failed() const { return failed_; }

  static std::string Fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

 private:
  int failed_ = 0;
};

std::string F3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

TaskRunOptions Options(const std::filesystem::path& runs) {
  TaskRunOptions o;
  o.runs_dir = runs;
  o.extra_scripts = {CommonScript()};
  return o;
}

int Rounds(const SessionResult& s) {
  int n = 0;
  for (const auto& t : s.subtasks) n += static_cast<int>(t.record.action_records.size());
  return n;
}

std::vector<Json> EventLines(const std::filesystem::path& run_dir) {
  std::vector<Json> out;
  for (const auto& line : Split(ReadText(run_dir / "events.jsonl"), '\n'))
    if (!Trim(line).empty()) out.push_back(Json::parse(line));
  return out;
}

// ---- end-to-end scenarios

Outcome Task1() {
  constexpr int kRuns = 10;
  constexpr int kMaxRounds = 6;
  ScratchDir runs("acc");
  std::string first_record, first_report;
  Outcome o;
  for (int i = 0; i < kRuns; ++i) {
    const TaskRunResult r = RunTask(SuiteDir() / "task01", Options(runs.path() / std::to_string(i)));
    const MetricsReport& m = r.report;
    const int rounds = Rounds(r.session);
    if (i == 0) {
      o.detail = "URCR=" + F3(m.urcr.value()) + " KSCR=" + F3(m.kscr.value()) +
                 " SRR=" + F3(m.srr.value()) + " rounds=" + std::to_string(rounds) +
                 " (<=" + std::to_string(kMaxRounds) + ")";
      if (!r.session.success) return {"session did not finish: " + r.error, o.detail};
      if (m.urcr.empty() || m.urcr.value() != 1.0 || m.kscr.empty() || m.kscr.value() != 1.0 ||
          m.srr.value() != 0.0)
        return {"metrics off target", o.detail};
      if (rounds > kMaxRounds) return {"too many rounds", o.detail};
      int plans = 0, learned = 0;
      for (const auto& e : EventLines(r.run_dir)) {
        plans += e["type"] == "plan";
        learned += e["type"] == "tricks_learned" || e["type"] == "map_learned";
      }
      if (plans == 0 || learned == 0) return {"plan or learning stage missing", o.detail};
      first_record = ReadText(r.run_dir / "record.json");
      first_report = ReadText(r.run_dir / "report.json");
    } else if (ReadText(r.run_dir / "record.json") != first_record ||
               ReadText(r.run_dir / "report.json") != first_report) {
      return {"run " + std::to_string(i) + " differs from run 0", o.detail};
    }
  }
  o.detail += " runs=" + std::to_string(kRuns) + " identical";
  return o;
}

Outcome Vague() {
  ScratchDir runs("acc");
  TaskRunOptions opt = Options(runs.path());
  opt.mode = DriveMode::kVague;
  const TaskRunResult r = RunTask(SuiteDir() / "task02", opt);
  const TaskSpec& spec = r.spec;
  const auto events = EventLines(r.run_dir);
  long first_prompt = -1, first_commit = -1;
  int prompts = 0;
  for (const auto& e : events) {
    const long seq = e["seq"];
    if (e["type"] == "interaction_prompt") {
      ++prompts;
      if (first_prompt < 0) first_prompt = seq;
    }
    if (e["type"] == "outcomes" && first_commit < 0)
      for (const auto& oc : e["data"]["outcomes"]) {
        const std::string eff = oc.value("effect", "");
        if (StartsWith(eff, "added ") || eff.find("order placed") != std::string::npos)
          first_commit = seq;
      }
  }
  Outcome o;
  o.detail = "prompts=" + std::to_string(prompts) + " turns=" +
             std::to_string(r.transcript.turns.size()) + " URCR=" + F3(r.report.urcr.value());
  if (prompts < 1) return {"no interaction prompt", o.detail};
  if (first_commit < 0 || first_prompt > first_commit)
    return {"order-placing action before the first prompt", o.detail};
  if (static_cast<int>(r.transcript.turns.size()) != prompts)
    return {"driver answered without a prompt", o.detail};
  // The vague instruction reveals no requirement by itself.
  const std::string vague = ToLower(*spec.vague_instruction);
  for (const auto& req : spec.requirements)
    if (vague.find(ToLower(req.text)) != std::string::npos)
      return {"requirement leaked into the instruction", o.detail};
  // Closed world: each reply is one requirement (or a refusal).
  for (const auto& t : r.transcript.turns) {
    bool inside = t.requirement < 0 && t.reply == "no preference";
    for (const auto& req : spec.requirements) inside = inside || t.reply == req.text;
    if (!inside) return {"reply outside the requirement list: " + t.reply, o.detail};
    if (t.requirement >= 0 && spec.requirements[t.requirement].text != t.reply)
      return {"reply attributed to the wrong requirement", o.detail};
  }
  if (!r.session.success || r.report.urcr.empty() || r.report.urcr.value() != 1.0)
    return {"URCR below 1", o.detail};
  o.detail += " closed-world";
  return o;
}

// ---- properties

std::filesystem::path SourceDirExamples() { return testing::SourceDir() / "examples"; }

Outcome Compression() {
  constexpr int kTrees = 500;
  int fixtures = 0;
  std::mt19937 rng(5150);
  for (const auto& root : {FixtureDir(), SourceDirExamples()}) {
    if (!std::filesystem::is_directory(root)) continue;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(root))
      if (e.path().extension() == ".xml") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const UiNode tree = ParseTree(ReadText(f));
      for (const auto& table : {testing::OcrTable{}, testing::RandomOcrTable(rng, tree)})
        if (auto bad = testing::CheckCompression(tree, table); !bad.empty())
          return {f.filename().string() + ": " + bad, ""};
      ++fixtures;
    }
  }
  testing::TreeGenOptions gen;
  gen.max_nodes = 50;
  for (int i = 0; i < kTrees; ++i) {
    const UiNode t = testing::RandomTree(rng, gen);
    if (auto bad = testing::CheckCompression(t, testing::RandomOcrTable(rng, t)); !bad.empty())
      return {"random tree " + std::to_string(i) + ": " + bad, ""};
  }
  return {"", "fixtures=" + std::to_string(fixtures) + " random=" + std::to_string(kTrees) +
                  " (<=50 nodes)"};
}

Outcome SomBijection() {
  constexpr int kScreens = 500;
  std::mt19937 rng(8086);
  for (int i = 0; i < kScreens; ++i) {
    const UiNode t = testing::RandomTree(rng);
    if (auto bad = testing::CheckSomBijection(t, rng); !bad.empty())
      return {"screen " + std::to_string(i) + ": " + bad, ""};
  }
  return {"", "screens=" + std::to_string(kScreens) + " exact"};
}

Outcome LoopProtocol() {
  constexpr int kSequences = 1000;
  std::mt19937 rng(31337);
  testing::LoopProtocolStats stats;
  for (int i = 0; i < kSequences; ++i)
    if (auto bad = testing::CheckLoopProtocol(rng, i % 2 == 1, &stats); !bad.empty())
      return {"sequence " + std::to_string(i) + ": " + bad, ""};
  Outcome o{"", "sequences=" + std::to_string(kSequences) + " rounds=" +
                    std::to_string(stats.rounds) + " revisions=" +
                    std::to_string(stats.revisions) + " decision_errors=" +
                    std::to_string(stats.decision_errors)};
  // The sample must actually exercise revisions and error routing.
  if (stats.revisions == 0 || stats.decision_errors == 0) o.failure = "sample too tame";
  return o;
}

Outcome MetricsOracle() {
  constexpr int kTraces = 1000;
  std::mt19937 rng(271828);
  for (int i = 0; i < kTraces; ++i) {
    if (auto bad = testing::CheckMetricsOnRandomTrace(rng); !bad.empty())
      return {"trace " + std::to_string(i) + ": " + bad, ""};
    if (auto bad = testing::CheckMetricsOnRandomJudgments(rng); !bad.empty())
      return {"judgments " + std::to_string(i) + ": " + bad, ""};
  }
  return {"", "traces=" + std::to_string(kTraces) + " URCR/KSCR/SRR/ER exact"};
}

// ---- learning

std::vector<ActionTransition> FollowFlow(ScreenPerceptor& perceptor) {
  ScriptedProvider script =
      ScriptedProvider::FromFiles({CommonScript(), SuiteDir() / "task01" / "script.json"});
  SimDevice device(LoadScreenGraph(SuiteDir() / "task01" / "device"));
  device.StartApp("com.x.android");
  ExecutorDeps d;
  d.provider = &script;
  d.device = &device;
  d.perceptor = &perceptor;
  return RunActionLoop({"Follow @elonmusk on X", "", "com.x.android", 0}, d, {}).transitions;
}

Outcome AppMapLearning() {
  constexpr int kPages = 4, kTriggers = 4, kOracleTrees = 300;
  ScreenPerceptor perceptor{{}, {}};
  TextDescriber describer;
  DiffEffectSummarizer effects;
  const MapLearnOptions opt{&describer, &effects};

  MapLearnStats s1;
  const auto pass1 = FollowFlow(perceptor);
  const AppMap map = LearnAppMap(pass1, AppMap{"com.x.android", {}}, opt, &s1);
  std::string detail = "pass1 pages=" + std::to_string(map.pages.size()) +
                       " triggers=" + std::to_string(map.TriggerCount());
  if (static_cast<int>(map.pages.size()) != kPages || map.TriggerCount() != kTriggers)
    return {"pass 1 counts differ from 4 pages / 4 triggers", detail};

  // Pass 2: every screen re-matches a learned page above the threshold and
  // the library's similarity equals the brute-force oracle.
  const auto pass2 = FollowFlow(perceptor);
  double min_sim = 1.0;
  for (const auto& t : pass2) {
    for (const auto* shot : {&t.prev, &t.next}) {
      const UiNode& tree = (*shot)->tree;
      const Page* page = MatchPage(map, tree);
      if (!page) return {"pass 2 screen matched no page", detail};
      const double sim = LabelSimilarity(tree, page->canonical_tree);
      if (sim != testing::OracleLabelSimilarity(tree, page->canonical_tree))
        return {"similarity disagrees with the oracle", detail};
      min_sim = std::min(min_sim, sim);
    }
  }
  detail += " pass2 min_sim=" + F3(min_sim) + " (>=0.85)";
  if (min_sim < kPageMatchThreshold) return {"re-match below threshold", detail};

  const ScreenPerception home = perceptor.PerceiveTree(pass2[0].prev->tree, {}, &map);
  int known = 0;
  for (const auto& line : Split(home.textual, '\n')) known += StartsWith(line, "    known: ");
  detail += " injected=" + std::to_string(known);
  if (known == 0) return {"no knowledge in the perceived screen", detail};

  MapLearnStats s2;
  const AppMap again = LearnAppMap(pass2, map, opt, &s2);
  if (Json(again).dump() != Json(map).dump()) return {"second learn changed the map", detail};
  detail += " idempotent";

  std::mt19937 rng(1729);
  testing::TreeGenOptions small;
  small.max_nodes = 12;
  for (int i = 0; i < kOracleTrees; ++i) {
    const UiNode a = testing::RandomTree(rng, small), b = testing::RandomTree(rng, small);
    if (LabelSimilarity(a, b) != testing::OracleLabelSimilarity(a, b))
      return {"oracle mismatch on random pair " + std::to_string(i), detail};
  }
  detail += " oracle=" + std::to_string(kOracleTrees) + " pairs exact";
  return {"", detail};
}

Outcome Ablation() {
  ScratchDir runs("acc");
  TaskRunOptions seeded = Options(runs.path() / "seeded");
  TaskRunOptions bare = Options(runs.path() / "bare");
  bare.seed_knowledge = false;
  const TaskRunResult a = RunTask(SuiteDir() / "task04", seeded);
  const TaskRunResult b = RunTask(SuiteDir() / "task04", bare);
  const int ra = Rounds(a.session), rb = Rounds(b.session);
  Outcome o{"", "seeded rounds=" + std::to_string(ra) + " empty-store rounds=" +
                    std::to_string(rb)};
  if (!a.session.success || !b.session.success) o.failure = "a run did not finish";
  else if (ra >= rb) o.failure = "seeded run is not shorter";
  return o;
}

Outcome RecordReplay() {
  ScratchDir runs("acc");
  int calls = 0, tasks = 0;
  for (const auto& task : FindTasks(SuiteDir())) {
    TaskRunOptions rec = Options(runs.path() / "rec");
    rec.provider = ProviderKind::kRecord;
    const TaskRunResult a = RunTask(task, rec);
    TaskRunOptions play = Options(runs.path() / "play");
    play.extra_scripts.clear();
    play.provider = ProviderKind::kReplay;
    play.cassette = a.run_dir / "cassette.jsonl";
    const TaskRunResult b = RunTask(task, play);
    const std::string id = task.filename().string();
    if (b.provider_misses != 0) return {id + ": calls outside the cassette", ""};
    if (b.provider_calls != a.provider_calls) return {id + ": call count differs", ""};
    for (const char* f : {"record.json", "trace.json", "report.json", "session.json",
                          "transcript.json"})
      if (ReadText(a.run_dir / f) != ReadText(b.run_dir / f)) return {id + ": " + f + " differs", ""};
    calls += b.provider_calls;
    ++tasks;
  }
  return {"", "tasks=" + std::to_string(tasks) + " replayed calls=" + std::to_string(calls) +
                  " misses=0 byte-identical"};
}

}  // namespace
}  // namespace mobagent

int main() {
  using namespace mobagent;
  Gate g;
  g.Run("task1-e2e", 5, Task1);
  g.Run("vague-instruction", 5, Vague);
  g.Run("tree-compression", 30, Compression);
  g.Run("som-bijection", 10, SomBijection);
  g.Run("loop-protocol", 30, LoopProtocol);
  g.Run("metrics-oracle", 10, MetricsOracle);
  g.Run("app-map", 10, AppMapLearning);
  g.Run("ablation-direction", 0, Ablation);
  g.Run("record-replay", 0, RecordReplay);
  std::printf("%d of 9 criteria failed\n", g.failed());
  return g.failed() == 0 ? 0 : 1;
}
