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


#include "mobagent/executor/action_loop.h"

#include <future>
#include <sstream>

#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/executor/plan_rules.h"
#include "mobagent/perception/set_of_marks.h"
#include "mobagent/runtime/responses.h"

namespace mobagent {

const char* ReflectionPolicyName(ReflectionPolicy p) {
  return p == ReflectionPolicy::kHybrid ? "hybrid" : "standalone";
}

ReflectionPolicy ParseReflectionPolicy(const std::string& s) {
  const std::string v = ToLower(Trim(s));
  if (v == "hybrid") return ReflectionPolicy::kHybrid;
  if (v == "standalone") return ReflectionPolicy::kStandalone;
  throw ValidationError("reflection policy must be hybrid or standalone, got '" + s + "'");
}

ContextPolicy ParseContextPolicy(const std::string& s) {
  const std::string v = ToLower(Trim(s));
  if (v == "auto") return ContextPolicy::kAuto;
  if (v == "always") return ContextPolicy::kAlways;
  if (v == "never") return ContextPolicy::kNever;
  throw ValidationError("context policy must be auto, always or never, got '" + s + "'");
}

namespace {

std::string RenderReflection(const Reflection& r) {
  std::string s = std::string("result ") + ActionResultCode(r.action_result());
  if (!r.plan_progress().empty()) s += "; progress: " + r.plan_progress();
  if (r.error_cause()) s += "; cause: " + *r.error_cause();
  return s;
}

std::string RenderOutcomes(const std::vector<ActionOutcome>& outcomes) {
  std::ostringstream os;
  for (const auto& o : outcomes) {
    os << o.action << " -> " << o.status;
    if (!o.error.empty()) os << " (" << o.error << ")";
    if (!o.effect.empty()) os << ": " << o.effect;
    os << "\n";
  }
  return os.str();
}

std::string NonEmptyString(const Json& j, const char* field) {
  return ParseStringField(j, field);
}

bool HasDeviceAction(const ActionDecision& d) {
  for (const auto& a : d.sequence())
    if (!IsTerminal(a)) return true;
  return false;
}

class Loop {
 public:
  Loop(const SubTaskInput& input, const ExecutorDeps& deps, const ExecutorOptions& options)
      : input_(input), deps_(deps), opts_(options), instruction_(input.instruction) {
    result_.record.subtask_index = input.subtask_index;
    extract_ = options.context == ContextPolicy::kAlways ||
               (options.context == ContextPolicy::kAuto && !Trim(input.context_request).empty());
  }

  ExecutionResult Run() {
    ScreenRef screen;
    try {
      screen = Perceive();
    } catch (const Error& e) {
      Abort(std::string("perception failed: ") + e.what());
    }
    bool after_interaction = false;
    bool prev_need_interaction = false;
    for (int t = 0;; ++t) {
      if (t >= opts_.round_cap)
        Abort("round cap of " + std::to_string(opts_.round_cap) + " reached");
      JoinExtraction();
      Emit("round_start", {{"round", t}, {"screen", screen->id}});
      WriteSom(t, *screen);
      try {
        if (t == 0) PlanDirect(*screen);
        else if (!after_interaction) Adjust(t, screen);
      } catch (const TaskAborted&) {
        throw;
      } catch (const Error& e) {
        Abort(std::string("planning failed: ") + e.what());
      }
      after_interaction = false;

      ActionLoopRecord rec;
      rec.round = t;
      rec.start_screen = screen;
      rec.plan = tracker_.plan();
      Emit("plan", {{"round", t}, {"plan", rec.plan}});

      if (request_.needed() || prev_need_interaction) {
        if (!request_.needed())
          request_ = InteractionRequest(kClarify, "the decider asked for user input");
        rec.interrupted = true;
        Push(std::move(rec));
        Interact(t, *screen);
        prev_need_interaction = false;
        after_interaction = true;
        continue;
      }

      std::optional<ActionDecision> decision;
      std::optional<ActionDecision> resolved;
      try {
        decision = Decide(t, *screen);
        resolved = ResolveMarks(*decision, screen->set_of_marks);
      } catch (const MalformedResponse& e) {
        rec.decision_error = e.what();
      } catch (const ProviderUnavailable& e) {
        rec.decision_error = e.what();
      } catch (const UnknownMark& e) {
        rec.decision_error = e.what();
      } catch (const InvalidMark& e) {
        rec.decision_error = e.what();
      }
      rec.decision = decision;
      if (rec.decision_error) {
        Emit("decision_error", {{"round", t}, {"error", *rec.decision_error}});
        rec.end_screen = screen;
        Push(std::move(rec));
        continue;
      }
      Emit("decision", {{"round", t}, {"decision", *decision}});

      ScreenRef next = screen;
      if (HasDeviceAction(*resolved)) {
        rec.outcomes = deps_.device->Execute(resolved->sequence());
        Emit("outcomes", {{"round", t}, {"outcomes", rec.outcomes}});
        try {
          next = Perceive();
        } catch (const Error& e) {
          rec.end_screen = screen;
          Push(std::move(rec));
          Abort(std::string("perception failed: ") + e.what());
        }
        result_.transitions.push_back({screen, *resolved, next});
      }
      rec.end_screen = next;
      screen = next;
      Push(std::move(rec));
      if (decision->IsFinish()) {
        if (!tracker_.plan().Complete())
          Emit("finish_with_pending", {{"round", t}, {"plan", tracker_.plan()}});
        result_.record.finished = true;
        break;
      }
      prev_need_interaction = decision->IsNeedInteraction();
    }
    return Finalize();
  }

 private:
  ScreenRef Perceive() {
    return std::make_shared<const ScreenPerception>(
        deps_.perceptor->Perceive(deps_.device->Capture(), deps_.map));
  }

  void Emit(const std::string& type, const Json& data) {
    if (deps_.events) deps_.events->Append(type, data);
  }

  void Push(ActionLoopRecord rec) {
    result_.record.action_records.push_back(std::move(rec));
    result_.record.contexts.push_back(context_);
  }

  void WriteSom(int t, const ScreenPerception& s) {
    if (opts_.som_dir.empty() || s.mode != PerceptionMode::kVisual) return;
    const auto path = opts_.som_dir / ("round_" + std::to_string(t) + "_som.svg");
    WriteFile(path, RenderMarkedImage(s.tree, s.set_of_marks, s.screenshot));
    Emit("som", {{"round", t}, {"path", path.string()}});
  }

  ExecutionResult Finalize() {
    JoinExtraction();
    result_.record.instruction = instruction_;
    if (!result_.record.contexts.empty()) result_.record.contexts.back() = context_;
    result_.trace = Project(result_.record);
    return result_;
  }

  [[noreturn]] void Abort(const std::string& reason) {
    result_.record.abort_reason = reason;
    Emit("aborted", {{"reason", reason}});
    throw TaskAborted(reason, Finalize());
  }

  std::vector<Trick> Tricks(TrickCategory category, const std::string& query) const {
    if (!deps_.tricks) return {};
    return deps_.tricks->Retrieve(category, query, input_.app, opts_.trick_top_k);
  }

  static std::string TricksSection(TrickCategory c, const std::vector<Trick>& tricks) {
    return std::string("category: ") + TrickCategoryName(c) + "\n" +
           (tricks.empty() ? std::string("(none)\n") : RenderTricks(tricks));
  }

  void AddCommon(RoleRequest& req, const ScreenPerception& screen) const {
    req.Set("instruction", instruction_).Set("screen", screen.textual);
    if (!context_.entries.empty()) req.Set("context", context_.MergedView());
  }

  void AddMemory(RoleRequest& req, int t) const {
    const auto& records = result_.record.action_records;
    for (int k = std::max(0, t - opts_.memory_window); k < t; ++k) {
      const auto& r = records[k];
      std::string line = "round " + std::to_string(k) + ": ";
      if (r.interrupted) {
        line += "interaction";
      } else {
        line += "sub-goal \"" + r.plan.current_subgoal + "\"; ";
        line += r.decision ? r.decision->Describe() : "no action (" + r.decision_error.value_or("") + ")";
        if (r.reflection) line += "; " + RenderReflection(*r.reflection);
      }
      req.AddMemory(line);
    }
  }

  void PlanDirect(const ScreenPerception& screen) {
    const bool standalone = opts_.policy == ReflectionPolicy::kStandalone;
    RoleRequest req(standalone ? Role::kPlanner : Role::kReplanner);
    AddCommon(req, screen);
    req.Set("tricks", TricksSection(TrickCategory::kPlanning,
                                    Tricks(TrickCategory::kPlanning, instruction_)));
    const auto resp = Complete<ReplanResponse>(*deps_.provider, req, [](const Json& j) {
                        return ParseReplan(j, false, true);
                      }).parsed;
    tracker_ = PlanTracker(PlanFromProposal(*resp.plan));
    request_ = resp.interaction;
  }

  void Adjust(int t, const ScreenRef& screen) {
    auto& prev = result_.record.action_records[t - 1];
    std::optional<Reflection> forced;
    if (prev.decision_error)
      forced = Reflection(ActionResult::kC, "", "decision failed: " + *prev.decision_error);
    const bool pending = tracker_.RevisionPending();

    auto make = [&](Role role) {
      RoleRequest req(role);
      AddCommon(req, *screen);
      req.Set("plan", RenderPlan(tracker_.plan()));
      req.Set("previous_screen", prev.start_screen->textual);
      req.Set("last_action", prev.decision ? prev.decision->Describe() + "\nexpected: " +
                                                 prev.decision->expected_result()
                                           : "none: " + prev.decision_error.value_or(""));
      req.Set("outcomes", RenderOutcomes(prev.outcomes));
      req.Set("tricks", TricksSection(TrickCategory::kPlanning,
                                      Tricks(TrickCategory::kPlanning, instruction_)));
      AddMemory(req, t);
      return req;
    };

    Reflection reflection = forced.value_or(Reflection(ActionResult::kB, "", std::nullopt));
    std::optional<PlanProposal> proposal;
    InteractionRequest interaction;
    if (opts_.policy == ReflectionPolicy::kHybrid) {
      RoleRequest req = make(Role::kReplanner);
      if (forced) req.Set("reflection", RenderReflection(*forced));
      if (pending)
        req.Set("revision",
                "The last two rounds failed. If this round failed as well (C or D), "
                "include a revised plan that keeps the completed sub-goals.");
      const bool need_reflection = !forced;
      const ActionResult forced_result = reflection.action_result();
      auto resp = Complete<ReplanResponse>(*deps_.provider, req, [&](const Json& j) {
                    ReplanResponse r = ParseReplan(j, need_reflection, false);
                    const ActionResult res =
                        need_reflection ? r.reflection->action_result() : forced_result;
                    if (pending && IsFailure(res) && !r.plan)
                      throw SchemaError("a third failed round needs a revised plan");
                    return r;
                  }).parsed;
      if (!forced) reflection = *resp.reflection;
      proposal = resp.plan;
      interaction = resp.interaction;
    } else {
      if (!forced) {
        RoleRequest req = make(Role::kReflector);
        reflection = *Complete<ReplanResponse>(*deps_.provider, req, [](const Json& j) {
                        return ParseReplan(j, true, false);
                      }).parsed.reflection;
      }
      const bool revise = tracker_.WouldRevise(reflection.action_result());
      RoleRequest req = make(Role::kPlanner);
      req.Set("reflection", RenderReflection(reflection));
      if (revise)
        req.Set("revision",
                "The last three rounds failed. Revise the plan and keep the completed "
                "sub-goals.");
      auto resp = Complete<ReplanResponse>(*deps_.provider, req, [revise](const Json& j) {
                    return ParseReplan(j, false, revise);
                  }).parsed;
      proposal = resp.plan;
      interaction = resp.interaction;
    }

    prev.reflection = reflection;
    Emit("reflection", {{"round", t - 1}, {"reflection", reflection}});
    if (tracker_.Apply(reflection.action_result(), proposal)) {
      Emit("plan_revised", {{"round", t}, {"revisions", tracker_.revisions()}});
      if (tracker_.revisions() > opts_.revision_budget)
        Abort("revision budget of " + std::to_string(opts_.revision_budget) + " exhausted");
    }
    request_ = interaction;
    const ActionResult r = reflection.action_result();
    if (extract_ && (r == ActionResult::kA || r == ActionResult::kB)) LaunchExtraction(t - 1, screen);
  }

  ActionDecision Decide(int t, const ScreenPerception& screen) {
    const ActionLoopRecord* prev = t > 0 ? &result_.record.action_records[t - 1] : nullptr;
    TrickCategory category = TrickCategory::kExecution;
    std::string query = SubgoalForDecider(tracker_.plan());
    if (prev && prev->reflection && IsFailure(prev->reflection->action_result())) {
      category = TrickCategory::kErrorRecovery;
      query = prev->reflection->error_cause().value_or("");
    }
    RoleRequest req(Role::kActionDecider);
    AddCommon(req, screen);
    req.Set("plan", RenderPlan(tracker_.plan()));
    req.Set("subgoal", SubgoalForDecider(tracker_.plan()));
    req.Set("tricks", TricksSection(category, Tricks(category, query)));
    if (prev && prev->reflection) req.Set("reflection", RenderReflection(*prev->reflection));
    AddMemory(req, t);
    return Complete<ActionDecision>(*deps_.provider, req, ParseDecision).parsed;
  }

  void Interact(int t, const ScreenPerception& screen) {
    if (!deps_.channel) Abort("interaction requested but no dialog channel is configured");
    InteractionInput in{t, instruction_, tracker_.plan(), request_, screen.textual,
                        context_.MergedView()};
    InteractionOptions io{opts_.interaction_cap, opts_.policy == ReflectionPolicy::kStandalone};
    try {
      InteractionResult res = RunInteraction(*deps_.provider, *deps_.channel, deps_.events, io, in);
      for (auto& r : res.records) result_.record.interaction_records.push_back(std::move(r));
      instruction_ = res.instruction;
      tracker_.Replace(res.plan);
      request_ = InteractionRequest();
    } catch (const TaskAborted&) {
      throw;
    } catch (const Error& e) {
      Abort(std::string("interaction failed: ") + e.what());
    }
  }

  void LaunchExtraction(int source_round, const ScreenRef& screen) {
    RoleRequest req(Role::kContextExtractor);
    req.Set("instruction", instruction_)
        .Set("context_request", input_.context_request)
        .Set("plan", RenderPlan(tracker_.plan()))
        .Set("screen", screen->textual);
    if (!context_.entries.empty()) req.Set("context", context_.MergedView());
    ModelProvider* provider = deps_.provider;
    extraction_round_ = source_round;
    extraction_ = std::async(std::launch::async, [provider, req]() {
      return Complete<std::string>(*provider, req, [](const Json& j) {
               return NonEmptyString(j, "extraction");
             }).parsed;
    });
  }

  void JoinExtraction() {
    if (!extraction_.valid()) return;
    try {
      std::string text = extraction_.get();
      context_.entries.emplace_back(extraction_round_, text);
      Emit("context", {{"round", extraction_round_}, {"extraction", text}});
    } catch (const Error& e) {
      Emit("context_gap", {{"round", extraction_round_}, {"error", e.what()}});
    }
  }

  SubTaskInput input_;
  ExecutorDeps deps_;
  ExecutorOptions opts_;
  std::string instruction_;
  ExecutionResult result_;
  PlanTracker tracker_;
  KeyContext context_;
  InteractionRequest request_;
  bool extract_ = false;
  std::future<std::string> extraction_;
  int extraction_round_ = -1;
};

}  // namespace

ExecutionResult RunActionLoop(const SubTaskInput& input, const ExecutorDeps& deps,
                              const ExecutorOptions& options) {
  if (!deps.provider || !deps.device || !deps.perceptor)
    throw ValidationError("action loop needs a provider, a device and a perceptor");
  Loop loop(input, deps, options);
  return loop.Run();
}

}  // namespace mobagent
