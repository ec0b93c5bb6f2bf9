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


#include "testing/loop_protocol.h"

#include <set>
#include <vector>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/device/device.h"
#include "mobagent/executor/action_loop.h"
#include "mobagent/perception/perceptor.h"
#include "mobagent/runtime/provider.h"

namespace mobagent::testing {

namespace {

class CounterDevice : public DeviceBackend {
 public:
  RawScreen Capture() override {
    const std::string n = std::to_string(steps_);
    return {{"sim://counter/" + n, ""},
            "<hierarchy><node class=\"android.widget.FrameLayout\" bounds=\"[0,0][200,200]\">"
            "<node class=\"android.widget.Button\" resource-id=\"c:id/go\" text=\"step " +
                n + "\" bounds=\"[0,0][100,100]\" clickable=\"true\"/></node></hierarchy>"};
  }
  std::vector<ActionOutcome> Execute(const std::vector<AtomicAction>& actions) override {
    std::vector<ActionOutcome> out;
    for (const auto& a : actions) {
      ActionOutcome o;
      o.action = ActionKind(a);
      o.status = kStatusOk;
      out.push_back(o);
      ++steps_;
    }
    return out;
  }
  std::vector<std::string> ListApps() const override { return {"c"}; }
  std::vector<AppMetadata> InstalledApps() const override { return {}; }
  void StartApp(const std::string&) override {}
  std::string CurrentApp() const override { return "c"; }
  std::string CurrentScreen() const override { return std::to_string(steps_); }
  std::vector<ActivityEvent> ActivityLog() const override { return {}; }

 private:
  int steps_ = 0;
};

// Consecutive failures that force a plan revision.
constexpr int kStreak = 3;

std::string Fenced(const Json& j) { return "```json\n" + j.dump() + "\n```"; }

// What the provider saw and said, in call order.
struct Transcript {
  std::vector<char> reflections;          // one per reflection it authored
  std::vector<bool> revision_hints;       // per adjust step: "revision" present
  std::vector<std::string> decider_tricks;  // per decider call
  std::vector<bool> decider_retry;
};

class RandomModel {
 public:
  RandomModel(std::mt19937& rng, bool standalone) : rng_(rng), standalone_(standalone) {
    finish_after_ = std::uniform_int_distribution<int>(1, 25)(rng_);
  }

  std::string Answer(const RoleRequest& r) {
    switch (r.role()) {
      case Role::kReplanner:
        if (!r.Has("previous_screen")) return Fenced({{"plan", Proposal()}});
        return Adjust(r, !r.Has("reflection"));
      case Role::kReflector:
        return Fenced({{"reflection", Reflect()}});
      case Role::kPlanner:
        if (!r.Has("previous_screen")) return Fenced({{"plan", Proposal()}});
        return Adjust(r, false);
      case Role::kActionDecider:
        return Decide(r);
      default:
        throw ProviderUnavailable("unexpected role");
    }
  }

  const Transcript& transcript() const { return log_; }

 private:
  Json Proposal() {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng_);
    Json items = Json::array();
    for (int i = 0; i < n; ++i) items.push_back("p" + std::to_string(plans_) + "." + std::to_string(i));
    ++plans_;
    return {{"overall_plan", items}};
  }

  Json Reflect() {
    const int x = std::uniform_int_distribution<int>(0, 9)(rng_);
    const char code = x < 3 ? 'A' : x < 5 ? 'B' : x < 8 ? 'C' : 'D';
    log_.reflections.push_back(code);
    Json j{{"action_result", std::string(1, code)}};
    if (code == 'C' || code == 'D') j["error_cause"] = "cause " + std::to_string(log_.reflections.size());
    return j;
  }

  // Hybrid: reflection plus, when asked to revise after a failure, a plan.
  // Standalone planner: a plan exactly when asked to revise.
  std::string Adjust(const RoleRequest& r, bool reflect) {
    const bool hint = r.Has("revision");
    log_.revision_hints.push_back(hint);
    Json out = Json::object();
    bool failed = false;
    if (standalone_) {
      failed = hint;
    } else if (reflect) {
      out["reflection"] = Reflect();
      const char c = log_.reflections.back();
      failed = c == 'C' || c == 'D';
    } else {
      failed = true;  // forced C
    }
    if (hint && failed) out["plan"] = Proposal();
    return Fenced(out);
  }

  std::string Decide(const RoleRequest& r) {
    const bool retry = r.Has("repair_hint");
    log_.decider_tricks.push_back(Split(r.Section("tricks"), '\n')[0]);
    log_.decider_retry.push_back(retry);
    if (!retry) broken_ = std::uniform_int_distribution<int>(0, 9)(rng_) == 0;
    if (broken_) return "no json here";
    if (++decisions_ > finish_after_) return Fenced({{"actions", {{{"type", "Finish"}}}}});
    return Fenced({{"actions", {{{"type", "Tap"}, {"x", 50}, {"y", 50}}}}});
  }

  std::mt19937& rng_;
  bool standalone_;
  int finish_after_;
  int decisions_ = 0;
  int plans_ = 0;
  bool broken_ = false;
  Transcript log_;
};

std::vector<std::string> Names(const Plan& p) {
  std::vector<std::string> out;
  for (const auto& i : p.overall_plan) out.push_back(i.description);
  return out;
}

std::vector<std::string> DoneNames(const Plan& p) {
  std::vector<std::string> out;
  for (const auto& i : p.overall_plan)
    if (i.status == ItemStatus::kDone) out.push_back(i.description);
  return out;
}

}  // namespace

std::string CheckLoopProtocol(std::mt19937& rng, bool standalone, LoopProtocolStats* stats) {
  RandomModel model(rng, standalone);
  FunctionProvider provider([&](const RoleRequest& r) { return model.Answer(r); });
  CounterDevice device;
  ScreenPerceptor perceptor({}, {});
  ExecutorOptions opts;
  opts.policy = standalone ? ReflectionPolicy::kStandalone : ReflectionPolicy::kHybrid;
  opts.revision_budget = 1000;
  opts.round_cap = 1000;
  ExecutorDeps deps;
  deps.provider = &provider;
  deps.device = &device;
  deps.perceptor = &perceptor;

  ExecutionResult result;
  try {
    result = RunActionLoop({"count", "", "c", 0}, deps, opts);
  } catch (const TaskAborted& e) {
    return std::string("aborted: ") + e.what();
  }
  const auto& recs = result.record.action_records;
  const Transcript& tr = model.transcript();
  if (!result.record.finished) return "loop ended without finishing";

  size_t authored = 0, decider_call = 0, adjust = 0;
  int streak = 0;
  for (size_t t = 0; t < recs.size(); ++t) {
    const std::string at = "round " + std::to_string(t) + ": ";
    const auto& rec = recs[t];
    if (t > 0 && rec.start_screen->id != recs[t - 1].end_screen->id)
      return at + "start screen is not the previous end screen";
    if (static_cast<int>(t) != rec.round) return at + "round index mismatch";
    if (t + 1 < recs.size() && !rec.reflection) return at + "no reflection recorded";

    // Decider calls: one, or three when every attempt was rejected.
    const size_t calls = rec.decision_error ? 3 : 1;
    const bool prev_failed =
        t > 0 && IsFailure(recs[t - 1].reflection->action_result());
    const std::string want =
        std::string("category: ") + (prev_failed ? "error_recovery" : "execution");
    for (size_t k = 0; k < calls; ++k, ++decider_call) {
      if (decider_call >= tr.decider_tricks.size()) return at + "missing decider call";
      if (tr.decider_tricks[decider_call] != want)
        return at + "decider saw '" + tr.decider_tricks[decider_call] + "', want '" + want + "'";
      if (tr.decider_retry[decider_call] != (k > 0)) return at + "retry bookkeeping off";
    }
    if (stats && rec.decision_error) ++stats->decision_errors;
    if (t == 0) continue;

    // Reflection of round t-1 as seen by the model of the rules.
    const auto& prev = recs[t - 1];
    const ActionResult r = prev.reflection->action_result();
    if (prev.decision_error) {
      if (r != ActionResult::kC || !StartsWith(prev.reflection->error_cause().value_or(""),
                                               "decision failed"))
        return at + "decision error did not force C";
    } else {
      if (authored >= tr.reflections.size()) return at + "reflection not authored by model";
      if (ActionResultCode(r) != tr.reflections[authored++])
        return at + "recorded reflection differs from the model's";
    }
    const bool hint_expected = streak == kStreak - 1;
    if (adjust >= tr.revision_hints.size()) return at + "missing adjust call";
    const bool hint = tr.revision_hints[adjust++];
    const bool revise = IsFailure(r) && streak + 1 == kStreak;
    if (standalone ? hint != revise : hint != hint_expected)
      return at + "revision hint " + (hint ? "present" : "absent") + " unexpectedly";
    streak = IsFailure(r) ? (revise ? 0 : streak + 1) : 0;

    const Plan& before = prev.plan;
    const Plan& after = rec.plan;
    const auto before_names = Names(before);
    bool grew = false;
    for (const auto& n : Names(after))
      if (std::find(before_names.begin(), before_names.end(), n) == before_names.end()) grew = true;
    if (grew != revise) return at + (revise ? "expected a revision" : "unexpected revision");
    if (stats && revise) ++stats->revisions;

    const auto done_before = DoneNames(before), done_after = DoneNames(after);
    const bool advance = r == ActionResult::kA && before.ActiveIndex() >= 0;
    if (done_after.size() != done_before.size() + (advance ? 1 : 0))
      return at + "done count moved wrongly after " + std::string(1, ActionResultCode(r));
    if (!std::equal(done_before.begin(), done_before.end(), done_after.begin()))
      return at + "done prefix not kept";
  }
  if (authored != tr.reflections.size()) return "model authored unused reflections";
  if (decider_call != tr.decider_tricks.size()) return "unaccounted decider calls";
  if (stats) stats->rounds += static_cast<int>(recs.size());
  return "";
}

}  // namespace mobagent::testing
