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


#include "testing/metrics_oracle.h"

#include <cctype>
#include <cmath>
#include <map>
#include <vector>

#include "mobagent/eval/judges.h"
#include "mobagent/eval/metrics.h"
#include "testing/test_util.h"

namespace mobagent::testing {

namespace {

const std::vector<std::string> kWords = {"alpha", "Beta", "gamma", "delta", "pizza"};
const std::vector<std::string> kKinds = {"app", "screen", "input", "effect", "action"};

std::string Pick(std::mt19937& rng, const std::vector<std::string>& v) {
  return v[Uniform(rng, 0, static_cast<int>(v.size()) - 1)];
}

std::string Lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Evidence is a substring of the "seq kind detail" lines; case is ignored.
bool Found(const std::vector<ActivityEvent>& log, const std::string& needle) {
  std::string text;
  for (const auto& e : log)
    text += std::to_string(e.seq) + " " + e.kind + " " + e.detail + "\n";
  return Lower(text).find(Lower(needle)) != std::string::npos;
}

struct Tally {
  int num = 0, den = 0, unscored = 0;
  void Add(std::optional<bool> v) {
    if (!v) ++unscored;
    else {
      ++den;
      num += *v;
    }
  }
  double Value() const { return den ? static_cast<double>(num) / den : 0.0; }
};

std::string Compare(const char* name, const Ratio& got, const Tally& want) {
  if (got.numerator != want.num || got.denominator != want.den || got.unscored != want.unscored ||
      std::fabs(got.value() - want.Value()) > 1e-12)
    return std::string(name) + ": got " + std::to_string(got.numerator) + "/" +
           std::to_string(got.denominator) + " want " + std::to_string(want.num) + "/" +
           std::to_string(want.den);
  return "";
}

std::optional<bool> RandomVerdict(std::mt19937& rng) {
  const int x = Uniform(rng, 0, 4);
  if (x == 0) return std::nullopt;
  return x > 2;
}

}  // namespace

std::string CheckMetricsOnRandomTrace(std::mt19937& rng) {
  TaskSpec spec;
  spec.id = "t";
  EvaluationInput in;
  in.spec = &spec;
  const int events = Uniform(rng, 0, 12);
  for (int i = 0; i < events; ++i)
    in.activity.push_back({i, Pick(rng, kKinds), Pick(rng, kWords) + " " + Pick(rng, kWords)});

  auto random_items = [&](std::vector<SpecItem>& items) {
    const int n = Uniform(rng, 0, 5);
    for (int i = 0; i < n; ++i) {
      SpecItem it;
      it.text = "item " + std::to_string(i);
      const int ev = Uniform(rng, 0, 3);
      for (int k = 0; k < ev; ++k) {
        std::string e = Chance(rng, 0.5) ? Pick(rng, kKinds) + " " + Pick(rng, kWords)
                                         : Lower(Pick(rng, kWords));
        it.evidence.push_back(e);
      }
      items.push_back(it);
    }
  };
  random_items(spec.requirements);
  random_items(spec.key_steps);

  // Rounds with a revised-item count that never shrinks.
  Tally redundant, plan_err, act_err, reflect_err;
  const int subtasks = Uniform(rng, 1, 3);
  for (int s = 0; s < subtasks; ++s) {
    FullExecutionRecord rec;
    const int rounds = Uniform(rng, 0, 8);
    int revised = 0;
    std::vector<int> revised_at;
    for (int t = 0; t < rounds; ++t) {
      ActionLoopRecord r;
      r.round = t;
      if (Chance(rng, 0.3)) ++revised;
      revised_at.push_back(revised);
      for (int k = 0; k < revised; ++k) r.plan.overall_plan.push_back({"old", ItemStatus::kRevised});
      r.plan.overall_plan.push_back({"now", ItemStatus::kActive});
      const int kind = Uniform(rng, 0, 9);
      if (kind == 0) {
        r.interrupted = true;
      } else if (kind == 1) {
        r.decision_error = "bad";
      }
      if (!r.interrupted && t + 1 < rounds) {
        const int code = Uniform(rng, 0, 3);
        const ActionResult res = static_cast<ActionResult>(code);
        r.reflection = Reflection(res, "", code >= 2 ? std::optional<std::string>("x")
                                                    : std::nullopt);
      }
      rec.action_records.push_back(r);
    }
    for (int t = 0; t < rounds; ++t) {
      const auto& r = rec.action_records[t];
      const bool failed =
          !r.interrupted && (r.decision_error || (r.reflection && (r.reflection->action_result() ==
                                                                        ActionResult::kC ||
                                                                    r.reflection->action_result() ==
                                                                        ActionResult::kD)));
      redundant.Add(failed);
      act_err.Add(failed);
      plan_err.Add(t + 1 < rounds && revised_at[t + 1] > revised_at[t]);
      reflect_err.Add(std::nullopt);
    }
    in.records.push_back(rec);
  }

  Tally urcr, kscr;
  auto judge_items = [&](const std::vector<SpecItem>& items, Tally& tally) {
    for (const auto& it : items) {
      if (it.evidence.empty()) {
        tally.Add(std::nullopt);
        continue;
      }
      bool all = true;
      for (const auto& e : it.evidence) all = all && Found(in.activity, e);
      tally.Add(all);
    }
  };
  judge_items(spec.requirements, urcr);
  judge_items(spec.key_steps, kscr);

  EvidenceJudge judge;
  const MetricsReport r = Evaluate(in, judge, DriveMode::kClear);
  for (const std::string& err :
       {Compare("URCR", r.urcr, urcr), Compare("KSCR", r.kscr, kscr), Compare("SRR", r.srr, redundant),
        Compare("ER_plan", r.er_plan, plan_err), Compare("ER_act", r.er_act, act_err),
        Compare("ER_reflect", r.er_reflect, reflect_err)})
    if (!err.empty()) return err;
  int steps = 0;
  for (const auto& rec : in.records) steps += static_cast<int>(rec.action_records.size());
  if (r.steps != steps) return "steps differ";
  if (r.mode != "clear") return "mode not recorded";
  return "";
}

std::string CheckMetricsOnRandomJudgments(std::mt19937& rng) {
  std::vector<MetricsReport> reports;
  const int n = Uniform(rng, 1, 6);
  std::map<std::string, std::vector<double>> urcr_by_group;
  for (int i = 0; i < n; ++i) {
    Judgments j;
    Tally u, k, s, p, a, f;
    for (int x = Uniform(rng, 0, 4); x > 0; --x) u.Add(j.requirements.emplace_back(RandomVerdict(rng)));
    for (int x = Uniform(rng, 0, 6); x > 0; --x) k.Add(j.key_steps.emplace_back(RandomVerdict(rng)));
    for (int x = Uniform(rng, 0, 6); x > 0; --x) {
      RoundJudgment rj{RandomVerdict(rng), RandomVerdict(rng), RandomVerdict(rng), RandomVerdict(rng)};
      s.Add(rj.redundant);
      p.Add(rj.plan_error);
      a.Add(rj.act_error);
      f.Add(rj.reflect_error);
      j.rounds.push_back(rj);
    }
    MetricsReport r = ComputeMetrics(j);
    for (const std::string& err : {Compare("URCR", r.urcr, u), Compare("KSCR", r.kscr, k),
                                   Compare("SRR", r.srr, s), Compare("ER_plan", r.er_plan, p),
                                   Compare("ER_act", r.er_act, a), Compare("ER_reflect", r.er_reflect, f)})
      if (!err.empty()) return err;
    const bool unscored = u.unscored + k.unscored + s.unscored + p.unscored + a.unscored + f.unscored > 0;
    if (r.has_unscored != unscored) return "has_unscored flag wrong";
    r.difficulty = static_cast<Difficulty>(Uniform(rng, 0, 2));
    urcr_by_group[DifficultyName(r.difficulty)].push_back(u.Value());
    urcr_by_group["all"].push_back(u.Value());
    reports.push_back(r);
  }
  const auto rows = Aggregate(reports);
  size_t expected_rows = urcr_by_group.size();
  if (rows.size() != expected_rows) return "aggregate row count";
  for (const auto& row : rows) {
    const auto& v = urcr_by_group.at(row.group);
    double sum = 0;
    for (double x : v) sum += x;
    if (row.tasks != static_cast<int>(v.size()) || std::fabs(row.urcr - sum / v.size()) > 1e-12)
      return "aggregate mean for " + row.group;
  }
  if (rows.back().group != "all") return "overall row not last";
  return "";
}

}  // namespace mobagent::testing
