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


// Task evaluators. Both produce Judgments for ComputeMetrics.
//
// EvidenceJudge is deterministic: an item is complete when every one of
// its evidence strings occurs in the device activity log (items without
// evidence are unscored). A round is redundant, and an action error, when
// its decision failed or its reflection came back C or D; a plan error
// when the next round's plan carries a new revised item. Reflection errors
// need a reviewer and are left unscored.
//
// ModelJudge asks the judge role ({"verdict": bool, "reason": str}) one
// yes/no question per item and per round aspect; a failed call leaves that
// judgment unscored.

#ifndef MOBAGENT_EVAL_JUDGES_H_
#define MOBAGENT_EVAL_JUDGES_H_

#include <string>
#include <vector>

#include "mobagent/core/types.h"
#include "mobagent/device/device.h"
#include "mobagent/eval/driver.h"
#include "mobagent/eval/metrics.h"
#include "mobagent/eval/task_spec.h"
#include "mobagent/runtime/provider.h"

namespace mobagent {

struct EvaluationInput {
  const TaskSpec* spec = nullptr;
  std::vector<FullExecutionRecord> records;  // one per sub-task
  std::vector<ActivityEvent> activity;
  Transcript transcript;
};

// All rounds of all sub-tasks in order.
std::vector<const ActionLoopRecord*> AllRounds(const EvaluationInput& in);
std::string RenderActivity(const std::vector<ActivityEvent>& activity);

class TaskJudge {
 public:
  virtual ~TaskJudge() = default;
  virtual Judgments Judge(const EvaluationInput& in) = 0;
};

class EvidenceJudge : public TaskJudge {
 public:
  Judgments Judge(const EvaluationInput& in) override;
};

class ModelJudge : public TaskJudge {
 public:
  explicit ModelJudge(ModelProvider* provider) : provider_(provider) {}
  Judgments Judge(const EvaluationInput& in) override;

 private:
  std::optional<bool> Ask(const std::string& question, const std::string& item,
                          const std::string& evidence, const std::string& record);
  ModelProvider* provider_;
};

MetricsReport Evaluate(const EvaluationInput& in, TaskJudge& judge, DriveMode mode);

}  // namespace mobagent

#endif  // MOBAGENT_EVAL_JUDGES_H_
