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


#include "mobagent/eval/judges.h"

#include <sstream>

#include "mobagent/core/errors.h"
#include "mobagent/core/strings.h"
#include "mobagent/learning/tricks.h"
#include "mobagent/runtime/responses.h"

namespace mobagent {

namespace {

int RevisedCount(const Plan& p) {
  int n = 0;
  for (const auto& i : p.overall_plan) n += i.status == ItemStatus::kRevised;
  return n;
}

bool Failed(const ActionLoopRecord& r) {
  return r.decision_error.has_value() ||
         (r.reflection && IsFailure(r.reflection->action_result()));
}

std::optional<bool> EvidenceHolds(const SpecItem& item, const std::string& log) {
  if (item.evidence.empty()) return std::nullopt;
  for (const auto& e : item.evidence)
    if (!ContainsIgnoreCase(log, e)) return false;
  return true;
}

std::string RenderRound(const ActionLoopRecord& r) {
  std::ostringstream os;
  os << "round " << r.round << ": sub-goal \"" << r.plan.current_subgoal << "\"";
  if (r.interrupted) os << "; interaction";
  if (r.decision) os << "; actions " << r.decision->Describe();
  if (r.decision_error) os << "; decision error " << *r.decision_error;
  if (r.reflection) {
    os << "; result " << ActionResultCode(r.reflection->action_result());
    if (r.reflection->error_cause()) os << " (" << *r.reflection->error_cause() << ")";
  }
  return os.str();
}

}  // namespace

std::vector<const ActionLoopRecord*> AllRounds(const EvaluationInput& in) {
  std::vector<const ActionLoopRecord*> out;
  for (const auto& rec : in.records)
    for (const auto& r : rec.action_records) out.push_back(&r);
  return out;
}

std::string RenderActivity(const std::vector<ActivityEvent>& activity) {
  std::ostringstream os;
  for (const auto& e : activity) os << e.seq << " " << e.kind << " " << e.detail << "\n";
  return os.str();
}

Judgments EvidenceJudge::Judge(const EvaluationInput& in) {
  Judgments j;
  const std::string log = RenderActivity(in.activity);
  for (const auto& r : in.spec->requirements) j.requirements.push_back(EvidenceHolds(r, log));
  for (const auto& k : in.spec->key_steps) j.key_steps.push_back(EvidenceHolds(k, log));
  for (const auto& rec : in.records) {
    const auto& rounds = rec.action_records;
    for (size_t t = 0; t < rounds.size(); ++t) {
      const auto& r = rounds[t];
      RoundJudgment rj;
      const bool failed = !r.interrupted && Failed(r);
      rj.redundant = failed;
      rj.act_error = failed;
      rj.plan_error = t + 1 < rounds.size() && RevisedCount(rounds[t + 1].plan) > RevisedCount(r.plan);
      j.rounds.push_back(rj);
    }
  }
  return j;
}

std::optional<bool> ModelJudge::Ask(const std::string& question, const std::string& item,
                                    const std::string& evidence, const std::string& record) {
  RoleRequest req(Role::kJudge);
  req.Set("question", question).Set("item", item).Set("evidence", evidence).Set("record", record);
  try {
    return Complete<JudgeResponse>(*provider_, req, ParseJudge).parsed.verdict;
  } catch (const MalformedResponse&) {
    return std::nullopt;
  } catch (const ProviderUnavailable&) {
    return std::nullopt;
  }
}

Judgments ModelJudge::Judge(const EvaluationInput& in) {
  Judgments j;
  const std::string evidence = RenderActivity(in.activity);
  std::string record;
  for (const auto& rec : in.records) record += RenderRecordForLearning(rec);
  for (const auto& r : in.spec->requirements)
    j.requirements.push_back(Ask("Was this user requirement fulfilled?", r.text, evidence, record));
  for (const auto& k : in.spec->key_steps)
    j.key_steps.push_back(Ask("Was this key step completed?", k.text, evidence, record));
  for (const ActionLoopRecord* r : AllRounds(in)) {
    const std::string item = RenderRound(*r);
    RoundJudgment rj;
    rj.redundant = Ask("Was this round redundant?", item, evidence, record);
    rj.plan_error = Ask("Did planning go wrong in this round?", item, evidence, record);
    rj.act_error = Ask("Did the chosen actions go wrong in this round?", item, evidence, record);
    rj.reflect_error = Ask("Was the reflection on this round wrong?", item, evidence, record);
    j.rounds.push_back(rj);
  }
  return j;
}

MetricsReport Evaluate(const EvaluationInput& in, TaskJudge& judge, DriveMode mode) {
  MetricsReport r = ComputeMetrics(judge.Judge(in));
  r.task_id = in.spec->id;
  r.difficulty = in.spec->difficulty;
  r.mode = DriveModeName(mode);
  return r;
}

}  // namespace mobagent
