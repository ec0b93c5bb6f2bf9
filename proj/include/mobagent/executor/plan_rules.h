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


// Sub-goal bookkeeping of the action loop, kept free of I/O so the rules
// can be exercised directly:
//   * an A reflection closes the active sub-goal and activates the first
//     pending one; B, C and D leave it alone;
//   * the third C/D in a row revises the plan: done and revised items stay,
//     the active item becomes revised, pending items are replaced by the
//     proposal. The streak then starts over.

#ifndef MOBAGENT_EXECUTOR_PLAN_RULES_H_
#define MOBAGENT_EXECUTOR_PLAN_RULES_H_

#include <optional>
#include <string>

#include "mobagent/core/types.h"
#include "mobagent/runtime/responses.h"

namespace mobagent {

inline constexpr int kRevisionStreak = 3;
inline constexpr char kAllSubgoalsComplete[] = "all sub-goals complete";

// Fresh plan: every item pending except the first, which is active.
Plan PlanFromProposal(const PlanProposal& proposal);

// Keeps the done prefix and restarts the rest from `proposal`; used after
// a clarification dialog.
Plan ReplaceOpenItems(const Plan& plan, const PlanProposal& proposal);

// "1. [done] Open search" lines.
std::string RenderPlan(const Plan& plan);

// What the decider is asked to work on.
std::string SubgoalForDecider(const Plan& plan);

class PlanTracker {
 public:
  PlanTracker() = default;
  explicit PlanTracker(Plan plan) : plan_(std::move(plan)) {}

  const Plan& plan() const { return plan_; }
  int failure_streak() const { return failure_streak_; }
  int revisions() const { return revisions_; }

  // Whether a C/D now would trigger a revision.
  bool RevisionPending() const { return failure_streak_ + 1 >= kRevisionStreak; }
  bool WouldRevise(ActionResult r) const { return IsFailure(r) && RevisionPending(); }

  // Applies one reflection. Returns true when it revised the plan; that
  // needs `proposal` (PlanValidationError otherwise). A proposal naming a
  // current sub-goal the plan lacks adds that sub-goal as pending.
  bool Apply(ActionResult result, const std::optional<PlanProposal>& proposal);

  void Replace(Plan plan) { plan_ = std::move(plan); }

 private:
  void Revise(const PlanProposal& proposal);
  void SyncCurrent();

  Plan plan_;
  int failure_streak_ = 0;
  int revisions_ = 0;
};

}  // namespace mobagent

#endif  // MOBAGENT_EXECUTOR_PLAN_RULES_H_
