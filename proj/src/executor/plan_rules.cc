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


#include "mobagent/executor/plan_rules.h"

#include <sstream>

#include "mobagent/core/errors.h"

namespace mobagent {

namespace {

bool HasItem(const Plan& p, const std::string& description) {
  for (const auto& i : p.overall_plan)
    if (i.description == description) return true;
  return false;
}

void ActivateFirstPending(Plan& p) {
  if (p.ActiveIndex() >= 0) return;
  for (auto& i : p.overall_plan) {
    if (i.status == ItemStatus::kPending) {
      i.status = ItemStatus::kActive;
      return;
    }
  }
}

void AppendProposal(Plan& p, const PlanProposal& proposal) {
  for (const auto& d : proposal.overall_plan) p.overall_plan.push_back({d, ItemStatus::kPending});
  if (!proposal.current_subgoal.empty() && !HasItem(p, proposal.current_subgoal))
    p.overall_plan.push_back({proposal.current_subgoal, ItemStatus::kPending});
  ActivateFirstPending(p);
}

void SetCurrent(Plan& p) {
  const int a = p.ActiveIndex();
  if (a >= 0) p.current_subgoal = p.overall_plan[a].description;
  else if (!p.overall_plan.empty()) p.current_subgoal = p.overall_plan.back().description;
}

}  // namespace

Plan PlanFromProposal(const PlanProposal& proposal) {
  Plan p;
  AppendProposal(p, proposal);
  SetCurrent(p);
  return p;
}

Plan ReplaceOpenItems(const Plan& plan, const PlanProposal& proposal) {
  Plan p;
  for (const auto& i : plan.overall_plan)
    if (i.status == ItemStatus::kDone || i.status == ItemStatus::kRevised)
      p.overall_plan.push_back(i);
  AppendProposal(p, proposal);
  SetCurrent(p);
  return p;
}

std::string RenderPlan(const Plan& plan) {
  std::ostringstream os;
  int n = 1;
  for (const auto& i : plan.overall_plan)
    os << n++ << ". [" << ItemStatusName(i.status) << "] " << i.description << "\n";
  os << "current: " << SubgoalForDecider(plan) << "\n";
  return os.str();
}

std::string SubgoalForDecider(const Plan& plan) {
  return plan.Complete() ? std::string(kAllSubgoalsComplete) : plan.current_subgoal;
}

bool PlanTracker::Apply(ActionResult result, const std::optional<PlanProposal>& proposal) {
  bool revised = false;
  if (result == ActionResult::kA) {
    failure_streak_ = 0;
    const int a = plan_.ActiveIndex();
    if (a >= 0) {
      plan_.overall_plan[a].status = ItemStatus::kDone;
      ActivateFirstPending(plan_);
    }
  } else if (result == ActionResult::kB) {
    failure_streak_ = 0;
  } else if (++failure_streak_ >= kRevisionStreak) {
    if (!proposal) throw PlanValidationError("plan revision needs a proposed plan");
    Revise(*proposal);
    failure_streak_ = 0;
    ++revisions_;
    revised = true;
  }
  if (!revised && proposal && !proposal->current_subgoal.empty() &&
      !HasItem(plan_, proposal->current_subgoal)) {
    plan_.overall_plan.push_back({proposal->current_subgoal, ItemStatus::kPending});
    ActivateFirstPending(plan_);
  }
  SyncCurrent();
  return revised;
}

void PlanTracker::Revise(const PlanProposal& proposal) {
  Plan p;
  for (const auto& i : plan_.overall_plan) {
    if (i.status == ItemStatus::kDone || i.status == ItemStatus::kRevised)
      p.overall_plan.push_back(i);
    else if (i.status == ItemStatus::kActive)
      p.overall_plan.push_back({i.description, ItemStatus::kRevised});
  }
  AppendProposal(p, proposal);
  plan_ = std::move(p);
}

void PlanTracker::SyncCurrent() { SetCurrent(plan_); }

}  // namespace mobagent
