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


#include "mobagent/eval/metrics.h"

#include <cstdio>
#include <sstream>

namespace mobagent {

namespace {

void Count(Ratio& r, const std::optional<bool>& v) {
  if (!v) {
    ++r.unscored;
    return;
  }
  ++r.denominator;
  if (*v) ++r.numerator;
}

nlohmann::json RatioJson(const Ratio& r) {
  return {{"value", r.value()},
          {"numerator", r.numerator},
          {"denominator", r.denominator},
          {"unscored", r.unscored}};
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

MetricsReport ComputeMetrics(const Judgments& j) {
  MetricsReport r;
  for (const auto& v : j.requirements) Count(r.urcr, v);
  for (const auto& v : j.key_steps) Count(r.kscr, v);
  for (const auto& round : j.rounds) {
    Count(r.srr, round.redundant);
    Count(r.er_plan, round.plan_error);
    Count(r.er_act, round.act_error);
    Count(r.er_reflect, round.reflect_error);
  }
  r.steps = static_cast<int>(j.rounds.size());
  for (const Ratio* x : {&r.urcr, &r.kscr, &r.srr, &r.er_plan, &r.er_act, &r.er_reflect})
    if (x->unscored > 0) r.has_unscored = true;
  return r;
}

nlohmann::json MetricsToJson(const MetricsReport& r) {
  return {{"task_id", r.task_id},
          {"difficulty", DifficultyName(r.difficulty)},
          {"mode", r.mode},
          {"urcr", RatioJson(r.urcr)},
          {"kscr", RatioJson(r.kscr)},
          {"srr", RatioJson(r.srr)},
          {"er_plan", RatioJson(r.er_plan)},
          {"er_act", RatioJson(r.er_act)},
          {"er_reflect", RatioJson(r.er_reflect)},
          {"pa", 1.0 - r.er_plan.value()},
          {"aa", 1.0 - r.er_act.value()},
          {"ra", 1.0 - r.er_reflect.value()},
          {"steps", r.steps},
          {"has_unscored", r.has_unscored},
          {"hard_error", r.hard_error},
          {"note", r.note}};
}

std::vector<AggregateRow> Aggregate(const std::vector<MetricsReport>& reports) {
  std::vector<AggregateRow> rows;
  auto mean = [&](const std::string& name, auto pick) {
    AggregateRow row;
    row.group = name;
    for (const auto& r : reports) {
      if (!pick(r)) continue;
      ++row.tasks;
      row.urcr += r.urcr.value();
      row.kscr += r.kscr.value();
      row.srr += r.srr.value();
      row.pa += 1.0 - r.er_plan.value();
      row.aa += 1.0 - r.er_act.value();
      row.ra += 1.0 - r.er_reflect.value();
    }
    if (row.tasks == 0) return;
    for (double* v : {&row.urcr, &row.kscr, &row.srr, &row.pa, &row.aa, &row.ra})
      *v /= row.tasks;
    rows.push_back(row);
  };
  for (Difficulty d : {Difficulty::kSimple, Difficulty::kMedium, Difficulty::kComplex})
    mean(DifficultyName(d), [d](const MetricsReport& r) { return r.difficulty == d; });
  mean("all", [](const MetricsReport&) { return true; });
  return rows;
}

nlohmann::json AggregateToJson(const std::vector<AggregateRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows)
    out.push_back({{"group", r.group},
                   {"tasks", r.tasks},
                   {"urcr", r.urcr},
                   {"kscr", r.kscr},
                   {"srr", r.srr},
                   {"pa", r.pa},
                   {"aa", r.aa},
                   {"ra", r.ra}});
  return out;
}

std::string RenderAggregateTable(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  os << "group    tasks  URCR   KSCR   SRR    PA     AA     RA\n";
  for (const auto& r : rows) {
    std::string g = r.group;
    g.resize(8, ' ');
    std::string n = std::to_string(r.tasks);
    n.resize(5, ' ');
    os << g << " " << n << "  " << Fixed(r.urcr) << "  " << Fixed(r.kscr) << "  "
       << Fixed(r.srr) << "  " << Fixed(r.pa) << "  " << Fixed(r.aa) << "  " << Fixed(r.ra)
       << "\n";
  }
  return os.str();
}

}  // namespace mobagent
