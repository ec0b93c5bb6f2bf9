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


// Evaluation metrics. A round is one action-loop round, so batched actions
// count once. Judgments may be unscored (the judge failed); unscored items
// leave both numerator and denominator.
//   URCR = completed requirements / scored requirements
//   KSCR = completed key steps / scored key steps
//   SRR  = redundant rounds / scored rounds
//   ER_x = rounds with a stage-x error / scored rounds, x in plan, act,
//          reflect; the accuracy view reports 1 - ER_x.
// A ratio over an empty denominator is 0 and flagged.

#ifndef MOBAGENT_EVAL_METRICS_H_
#define MOBAGENT_EVAL_METRICS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mobagent/eval/task_spec.h"

namespace mobagent {

struct RoundJudgment {
  std::optional<bool> redundant;
  std::optional<bool> plan_error;
  std::optional<bool> act_error;
  std::optional<bool> reflect_error;
};

struct Judgments {
  std::vector<std::optional<bool>> requirements;
  std::vector<std::optional<bool>> key_steps;
  std::vector<RoundJudgment> rounds;
};

struct Ratio {
  int numerator = 0;
  int denominator = 0;
  int unscored = 0;
  double value() const {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / denominator;
  }
  bool empty() const { return denominator == 0; }
};

struct MetricsReport {
  std::string task_id;
  Difficulty difficulty = Difficulty::kSimple;
  std::string mode;
  Ratio urcr;
  Ratio kscr;
  Ratio srr;
  Ratio er_plan;
  Ratio er_act;
  Ratio er_reflect;
  int steps = 0;  // action-loop rounds
  bool has_unscored = false;
  bool hard_error = false;
  std::string note;
};

MetricsReport ComputeMetrics(const Judgments& j);

nlohmann::json MetricsToJson(const MetricsReport& r);

struct AggregateRow {
  std::string group;  // difficulty name or "all"
  int tasks = 0;
  double urcr = 0, kscr = 0, srr = 0, pa = 0, aa = 0, ra = 0;
};

// Per-difficulty means (in simple, medium, complex order, empty groups
// skipped) followed by the overall mean.
std::vector<AggregateRow> Aggregate(const std::vector<MetricsReport>& reports);
nlohmann::json AggregateToJson(const std::vector<AggregateRow>& rows);
std::string RenderAggregateTable(const std::vector<AggregateRow>& rows);

}  // namespace mobagent

#endif  // MOBAGENT_EVAL_METRICS_H_
