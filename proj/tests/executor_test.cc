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


#include <random>

#include "gtest/gtest.h"
#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/device/sim_device.h"
#include "mobagent/executor/action_loop.h"
#include "mobagent/executor/plan_rules.h"
#include "mobagent/runtime/provider.h"
#include "mobagent/session/event_log.h"
#include "testing/loop_protocol.h"
#include "testing/test_util.h"

namespace mobagent {
namespace {

using testing::CommonScript;
using testing::ScratchDir;
using testing::SuiteDir;

std::vector<ItemStatus> Statuses(const Plan& p) {
  std::vector<ItemStatus> out;
  for (const auto& i : p.overall_plan) out.push_back(i.status);
  return out;
}

std::vector<std::string> Names(const Plan& p) {
  std::vector<std::string> out;
  for (const auto& i : p.overall_plan) out.push_back(i.description);
  return out;
}

constexpr ItemStatus kP = ItemStatus::kPending, kAc = ItemStatus::kActive,
                     kDn = ItemStatus::kDone, kRv = ItemStatus::kRevised;

TEST(PlanRulesTest, FromProposalActivatesFirst) {
  const Plan p = PlanFromProposal({{"a", "b", "c"}, "a"});
  EXPECT_EQ(Statuses(p), (std::vector<ItemStatus>{kAc, kP, kP}));
  EXPECT_EQ(p.current_subgoal, "a");
  EXPECT_EQ(RenderPlan(p), "1. [active] a\n2. [pending] b\n3. [pending] c\ncurrent: a\n");
}

TEST(PlanRulesTest, OnlyAAdvances) {
  PlanTracker t(PlanFromProposal({{"a", "b"}, "a"}));
  EXPECT_FALSE(t.Apply(ActionResult::kB, std::nullopt));
  EXPECT_FALSE(t.Apply(ActionResult::kC, std::nullopt));
  EXPECT_EQ(t.plan().DoneCount(), 0);
  t.Apply(ActionResult::kA, std::nullopt);
  EXPECT_EQ(Statuses(t.plan()), (std::vector<ItemStatus>{kDn, kAc}));
  EXPECT_EQ(t.plan().current_subgoal, "b");
  t.Apply(ActionResult::kA, std::nullopt);
  EXPECT_TRUE(t.plan().Complete());
  EXPECT_EQ(SubgoalForDecider(t.plan()), kAllSubgoalsComplete);
  t.Apply(ActionResult::kA, std::nullopt);  // nothing left to close
  EXPECT_EQ(t.plan().DoneCount(), 2);
}

TEST(PlanRulesTest, ThirdFailureRevises) {
  PlanTracker t(PlanFromProposal({{"a", "b", "c"}, "a"}));
  t.Apply(ActionResult::kA, std::nullopt);
  t.Apply(ActionResult::kC, std::nullopt);
  t.Apply(ActionResult::kD, std::nullopt);
  EXPECT_TRUE(t.RevisionPending());
  EXPECT_FALSE(t.WouldRevise(ActionResult::kB));
  EXPECT_THROW(t.Apply(ActionResult::kC, std::nullopt), PlanValidationError);

  PlanTracker u(PlanFromProposal({{"a", "b", "c"}, "a"}));
  u.Apply(ActionResult::kA, std::nullopt);
  u.Apply(ActionResult::kC, std::nullopt);
  u.Apply(ActionResult::kD, std::nullopt);
  EXPECT_TRUE(u.Apply(ActionResult::kC, PlanProposal{{"x", "y"}, "x"}));
  EXPECT_EQ(Names(u.plan()), (std::vector<std::string>{"a", "b", "x", "y"}));
  EXPECT_EQ(Statuses(u.plan()), (std::vector<ItemStatus>{kDn, kRv, kAc, kP}));
  EXPECT_EQ(u.failure_streak(), 0);
  EXPECT_EQ(u.revisions(), 1);
}

TEST(PlanRulesTest, BResetsStreak) {
  PlanTracker t(PlanFromProposal({{"a"}, "a"}));
  t.Apply(ActionResult::kC, std::nullopt);
  t.Apply(ActionResult::kC, std::nullopt);
  t.Apply(ActionResult::kB, std::nullopt);
  EXPECT_FALSE(t.Apply(ActionResult::kC, std::nullopt));
  EXPECT_EQ(t.failure_streak(), 1);
}

TEST(PlanRulesTest, NamedSubgoalIsAdded) {
  PlanTracker t(PlanFromProposal({{"a"}, "a"}));
  t.Apply(ActionResult::kA, PlanProposal{{"a"}, "dismiss popup"});
  EXPECT_EQ(Names(t.plan()), (std::vector<std::string>{"a", "dismiss popup"}));
  EXPECT_EQ(t.plan().current_subgoal, "dismiss popup");
}

TEST(PlanRulesTest, ReplaceOpenItemsKeepsDone) {
  PlanTracker t(PlanFromProposal({{"a", "b"}, "a"}));
  t.Apply(ActionResult::kA, std::nullopt);
  const Plan p = ReplaceOpenItems(t.plan(), {{"z"}, "z"});
  EXPECT_EQ(Names(p), (std::vector<std::string>{"a", "z"}));
  EXPECT_EQ(Statuses(p), (std::vector<ItemStatus>{kDn, kAc}));
}

TEST(PlanRulesTest, PolicyNames) {
  EXPECT_EQ(ParseReflectionPolicy(" Hybrid "), ReflectionPolicy::kHybrid);
  EXPECT_STREQ(ReflectionPolicyName(ReflectionPolicy::kStandalone), "standalone");
  EXPECT_THROW(ParseReflectionPolicy("mixed"), ValidationError);
  EXPECT_EQ(ParseContextPolicy("never"), ContextPolicy::kNever);
  EXPECT_THROW(ParseContextPolicy("sometimes"), ValidationError);
}

struct XRig {
  ScriptedProvider script = ScriptedProvider::FromFiles(
      {CommonScript(), SuiteDir() / "task01" / "script.json"});
  CountingProvider counting{&script};
  SimDevice device{LoadScreenGraph(SuiteDir() / "task01" / "device")};
  ScreenPerceptor perceptor{{}, {}};
  EventLog events;

  XRig() { device.StartApp("com.x.android"); }
  ExecutorDeps Deps() {
    ExecutorDeps d;
    d.provider = &counting;
    d.device = &device;
    d.perceptor = &perceptor;
    d.events = &events;
    return d;
  }
  int Count(const std::string& type) const {
    int n = 0;
    for (const auto& e : events.Since(0)) n += e.type == type;
    return n;
  }
};

const SubTaskInput kFollow{"Follow @elonmusk on X", "", "com.x.android", 0};

TEST(ActionLoopTest, FollowsOnXHybrid) {
  XRig rig;
  const ExecutionResult r = RunActionLoop(kFollow, rig.Deps(), {});
  ASSERT_TRUE(r.record.finished);
  ASSERT_EQ(r.record.action_records.size(), 5u);
  for (int t = 0; t < 4; ++t)
    EXPECT_EQ(r.record.action_records[t].reflection->action_result(), ActionResult::kA);
  EXPECT_TRUE(r.record.action_records.back().plan.Complete());
  EXPECT_EQ(rig.device.CurrentScreen(), "profile_followed");
  EXPECT_EQ(rig.counting.count(Role::kReplanner), 5);
  EXPECT_EQ(rig.counting.count(Role::kActionDecider), 5);
  EXPECT_EQ(rig.counting.count(Role::kReflector), 0);
  EXPECT_EQ(r.transitions.size(), 4u);  // Finish moves nothing
  EXPECT_EQ(r.trace.steps.size(), 5u);
  EXPECT_EQ(rig.Count("reflection"), 4);
  EXPECT_EQ(rig.Count("round_start"), 5);
}

TEST(ActionLoopTest, FollowsOnXStandalone) {
  XRig rig;
  ExecutorOptions o;
  o.policy = ReflectionPolicy::kStandalone;
  const ExecutionResult r = RunActionLoop(kFollow, rig.Deps(), o);
  EXPECT_TRUE(r.record.finished);
  EXPECT_EQ(r.record.action_records.size(), 5u);
  EXPECT_EQ(rig.counting.count(Role::kPlanner), 5);
  EXPECT_EQ(rig.counting.count(Role::kReflector), 4);
  EXPECT_EQ(rig.counting.count(Role::kReplanner), 0);
}

TEST(ActionLoopTest, TricksReachTheDecider) {
  XRig rig;
  TrickStore tricks;
  tricks.Add({TrickCategory::kExecution, "com.x.android", "Use the search tab to open the search page", "t"});
  std::vector<std::string> seen;
  FunctionProvider spy([&](const RoleRequest& req) {
    if (req.role() == Role::kActionDecider) seen.push_back(req.Section("tricks"));
    return rig.script.Complete(req);
  });
  ExecutorDeps d = rig.Deps();
  d.provider = &spy;
  d.tricks = &tricks;
  RunActionLoop(kFollow, d, {});
  ASSERT_FALSE(seen.empty());
  EXPECT_EQ(seen[0], "category: execution\n- Use the search tab to open the search page\n");
}

TEST(ActionLoopTest, RoundCapAbortsWithPartialRecord) {
  XRig rig;
  ExecutorOptions o;
  o.round_cap = 2;
  try {
    RunActionLoop(kFollow, rig.Deps(), o);
    FAIL();
  } catch (const TaskAborted& e) {
    EXPECT_EQ(e.partial().record.action_records.size(), 2u);
    EXPECT_NE(e.partial().record.abort_reason.find("round cap"), std::string::npos);
  }
}

// Every round fails: three failures revise, and the budget then runs out.
TEST(ActionLoopTest, RevisionBudgetAborts) {
  int plans = 0;
  FunctionProvider p([&](const RoleRequest& r) -> std::string {
    if (r.role() == Role::kActionDecider)
      return "```json\n{\"actions\":[{\"type\":\"Tap\",\"x\":1,\"y\":1}]}\n```";
    Json out = Json::object();
    if (r.Has("previous_screen"))
      out["reflection"] = {{"action_result", "D"}, {"error_cause", "nothing happened"}};
    if (!r.Has("previous_screen") || r.Has("revision"))
      out["plan"] = {{"overall_plan", {"try " + std::to_string(plans++)}}};
    return "```json\n" + out.dump() + "\n```";
  });
  XRig rig;
  ExecutorDeps d = rig.Deps();
  d.provider = &p;
  ExecutorOptions o;
  o.revision_budget = 1;
  try {
    RunActionLoop(kFollow, d, o);
    FAIL();
  } catch (const TaskAborted& e) {
    // Rounds 0..5 ran; the reflection on round 5 is the second revision.
    EXPECT_EQ(e.partial().record.action_records.size(), 6u);
    EXPECT_NE(std::string(e.what()).find("revision budget"), std::string::npos);
  }
  EXPECT_EQ(rig.Count("plan_revised"), 2);
}

TEST(ActionLoopTest, DialogWithoutChannelAborts) {
  FunctionProvider p([](const RoleRequest&) -> std::string {
    return R"({"plan":{"overall_plan":["ask"]},"interaction":{"interaction_type":1,"rationale":"?"}})";
  });
  XRig rig;
  ExecutorDeps d = rig.Deps();
  d.provider = &p;
  EXPECT_THROW(RunActionLoop(kFollow, d, {}), TaskAborted);
}

TEST(ActionLoopTest, ExtractionGapDoesNotAbort) {
  XRig rig;
  ExecutorOptions o;
  o.context = ContextPolicy::kAlways;
  const ExecutionResult r = RunActionLoop(kFollow, rig.Deps(), o);
  EXPECT_TRUE(r.record.finished);
  EXPECT_EQ(rig.Count("context_gap"), 4);
  EXPECT_EQ(rig.counting.count(Role::kContextExtractor), 4);  // unavailable is not retried
}

TEST(ActionLoopTest, WritesMarkedScreens) {
  XRig rig;
  ScratchDir dir("som");
  ExecutorOptions o;
  o.som_dir = dir.path();
  RunActionLoop(kFollow, rig.Deps(), o);
  for (int t = 0; t < 5; ++t)
    EXPECT_TRUE(std::filesystem::exists(dir.path() / ("round_" + std::to_string(t) + "_som.svg")));
}

TEST(ActionLoopTest, NeedsDependencies) {
  EXPECT_THROW(RunActionLoop(kFollow, ExecutorDeps{}, {}), ValidationError);
}

TEST(LoopProtocolTest, RandomSequences) {
  std::mt19937 rng(20260311);
  testing::LoopProtocolStats stats;
  for (int i = 0; i < 200; ++i) {
    const std::string err = testing::CheckLoopProtocol(rng, i % 2 == 1, &stats);
    ASSERT_EQ(err, "") << "sequence " << i;
  }
  // The generator must actually reach the interesting branches.
  EXPECT_GT(stats.revisions, 20);
  EXPECT_GT(stats.decision_errors, 20);
}

}  // namespace
}  // namespace mobagent
