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


// Randomized cross-check of the evaluation metrics. Random traces (activity
// log, spec items, per-round records) are scored by EvidenceJudge and
// ComputeMetrics and recomputed here from the metric definitions.

#ifndef MOBAGENT_TESTS_TESTING_METRICS_ORACLE_H_
#define MOBAGENT_TESTS_TESTING_METRICS_ORACLE_H_

#include <random>
#include <string>

namespace mobagent::testing {

// Empty when library and oracle agree on one random trace.
std::string CheckMetricsOnRandomTrace(std::mt19937& rng);

// Random judgments (with unscored entries) through ComputeMetrics and a
// random batch through Aggregate.
std::string CheckMetricsOnRandomJudgments(std::mt19937& rng);

}  // namespace mobagent::testing

#endif  // MOBAGENT_TESTS_TESTING_METRICS_ORACLE_H_
