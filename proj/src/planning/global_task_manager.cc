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


#include "mobagent/planning/global_task_manager.h"

#include <set>
#include <sstream>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/runtime/responses.h"

namespace mobagent {

namespace {

std::set<std::string> Packages(const std::vector<AppMetadata>& metadata) {
  std::set<std::string> out;
  for (const auto& m : metadata) out.insert(m.package_name);
  return out;
}

void CheckPackages(const std::vector<PlannedSubTask>& items,
                   const std::vector<AppMetadata>& metadata) {
  const auto known = Packages(metadata);
  for (const auto& p : items)
    if (!known.count(p.subtask.target_package))
      throw PlanValidationError("planner named an app that is not installed: " +
                                p.subtask.target_package);
}

GlobalPlanItem ToItem(const PlannedSubTask& p) {
  return {p.description, ItemStatus::kPending, p.subtask};
}

// Runs `attempt` and retries it once with a hint when validation fails.
template <class Fn>
auto WithOneRetry(RoleRequest req, Fn attempt) {
  try {
    return attempt(req);
  } catch (const PlanValidationError& e) {
    req.Set("repair_hint", std::string("The previous plan was rejected: ") + e.what() +
                               ". Only use packages from app_metadata.");
    return attempt(req);
  }
}

}  // namespace

std::string RenderAppMetadata(const std::vector<AppMetadata>& metadata) {
  std::ostringstream os;
  for (const auto& m : metadata)
    os << m.package_name << " (" << m.display_name << "): " << m.description << "\n";
  return os.str();
}

std::string RenderGlobalPlan(const GlobalPlan& plan) {
  std::ostringstream os;
  int i = 1;
  for (const auto& item : plan.overall_plan)
    os << i++ << ". [" << ItemStatusName(item.status) << "] " << item.description << " ("
       << item.subtask.target_package << ")\n";
  if (!plan.context_carryover.empty()) os << "carry-over: " << plan.context_carryover << "\n";
  return os.str();
}

std::string RenderTrace(const TraceSummary& trace) {
  std::ostringstream os;
  os << "instruction: " << trace.instruction << "\n";
  os << "final sub-goal: " << trace.final_subgoal << "\n";
  for (const auto& s : trace.steps) {
    os << "round " << s.round << ": ";
    os << (s.decision ? s.decision->Describe() : std::string("(no action)"));
    if (s.reflection) {
      os << " -> " << ActionResultCode(s.reflection->action_result());
      if (!s.reflection->plan_progress().empty()) os << " " << s.reflection->plan_progress();
      if (s.reflection->error_cause()) os << " (" << *s.reflection->error_cause() << ")";
    }
    os << "\n";
  }
  const std::string ctx = trace.final_context.MergedView();
  if (!ctx.empty()) os << "context: " << ctx << "\n";
  return os.str();
}

std::string AppendCarryover(const std::string& carryover, const std::string& entry,
                            std::size_t cap) {
  const std::string e = Trim(entry);
  if (e.empty()) return carryover;
  std::vector<std::string> lines;
  for (const auto& l : Split(carryover, '\n'))
    if (!l.empty()) lines.push_back(l);
  lines.push_back(e);
  std::string out = Join(lines, "\n");
  size_t drop = 0;
  while (out.size() > cap && drop + 1 < lines.size()) {
    ++drop;
    out = Join(std::vector<std::string>(lines.begin() + drop, lines.end()), "\n");
  }
  if (out.size() > cap) out = out.substr(out.size() - cap);
  return out;
}

GlobalTaskManager::GlobalTaskManager(ModelProvider* provider, EventLog* events,
                                     GlobalManagerOptions options)
    : provider_(provider), events_(events), options_(options) {}

void GlobalTaskManager::Emit(const std::string& type, const nlohmann::json& data) {
  if (events_) events_->Append(type, data);
}

std::vector<AppMetadata> GlobalTaskManager::RefreshMetadata(const DeviceBackend& device) {
  std::vector<AppMetadata> out = device.InstalledApps();
  for (auto& m : out) {
    if (!Trim(m.description).empty()) continue;
    RoleRequest req(Role::kSummarizer);
    req.Set("app", m.package_name + " (" + m.display_name + ")");
    try {
      m.description = Complete<std::string>(*provider_, req, [](const Json& j) {
                        std::string s = Trim(ParseStringField(j, "summary"));
                        if (s.empty()) throw SchemaError("summary must be non-empty");
                        return s;
                      }).parsed;
    } catch (const Error& e) {
      m.description = m.display_name;
      Emit("metadata_gap", {{"package", m.package_name}, {"error", e.what()}});
    }
  }
  return out;
}

GlobalPlan GlobalTaskManager::PlanInitial(const std::string& instruction,
                                          const std::vector<AppMetadata>& metadata) {
  if (metadata.empty()) throw PlanValidationError("no apps installed");
  RoleRequest req(Role::kGlobalPlanner);
  req.Set("instruction", instruction).Set("app_metadata", RenderAppMetadata(metadata));
  GlobalPlan plan = WithOneRetry(req, [&](const RoleRequest& r) {
    const auto resp = Complete<GlobalPlannerResponse>(*provider_, r, ParseGlobalPlanner);
    if (resp.parsed.overall_plan.empty()) throw PlanValidationError("global plan is empty");
    CheckPackages(resp.parsed.overall_plan, metadata);
    GlobalPlan p;
    for (const auto& item : resp.parsed.overall_plan) p.overall_plan.push_back(ToItem(item));
    p.overall_plan.front().status = ItemStatus::kActive;
    p.context_carryover =
        AppendCarryover("", resp.parsed.context_carryover, options_.carryover_cap);
    return p;
  });
  Emit("global_plan", {{"plan", plan}});
  return plan;
}

GlobalPlan GlobalTaskManager::AdjustGlobal(const std::string& instruction,
                                           const TraceSummary& trace, const GlobalPlan& plan,
                                           const std::vector<AppMetadata>& metadata) {
  if (!plan.active()) throw PlanValidationError("global plan has no active sub-task");
  RoleRequest req(Role::kGlobalPlanner);
  req.Set("instruction", instruction)
      .Set("app_metadata", RenderAppMetadata(metadata))
      .Set("global_plan", RenderGlobalPlan(plan))
      .Set("trace", RenderTrace(trace));
  GlobalPlan next = WithOneRetry(req, [&](const RoleRequest& r) {
    const auto resp = Complete<GlobalPlannerResponse>(*provider_, r, ParseGlobalPlanner);
    CheckPackages(resp.parsed.overall_plan, metadata);
    GlobalPlan p = plan;
    GlobalPlanItem* active = p.active();
    active->status =
        resp.parsed.verdict == "revised" ? ItemStatus::kRevised : ItemStatus::kDone;
    if (!resp.parsed.overall_plan.empty()) {
      std::vector<GlobalPlanItem> kept;
      for (const auto& item : p.overall_plan)
        if (item.status != ItemStatus::kPending) kept.push_back(item);
      for (const auto& item : resp.parsed.overall_plan) kept.push_back(ToItem(item));
      p.overall_plan = std::move(kept);
    }
    const std::string entry = !resp.parsed.context_carryover.empty()
                                  ? resp.parsed.context_carryover
                                  : trace.final_context.MergedView();
    p.context_carryover = AppendCarryover(p.context_carryover, entry, options_.carryover_cap);
    if (resp.parsed.complete) {
      p.complete = true;
      return p;
    }
    for (auto& item : p.overall_plan) {
      if (item.status == ItemStatus::kPending) {
        item.status = ItemStatus::kActive;
        return p;
      }
    }
    throw PlanValidationError("plan has no remaining sub-task but is not marked complete");
  });
  Emit("global_plan_adjusted", {{"plan", next}});
  return next;
}

std::string GlobalTaskManager::Dispatch(GlobalPlan& plan, DeviceBackend& device) {
  GlobalPlanItem* active = plan.active();
  if (!active) throw PlanValidationError("global plan has no active sub-task");
  device.StartApp(active->subtask.target_package);
  std::string rewritten = active->subtask.raw_instruction;
  if (!Trim(plan.context_carryover).empty()) {
    RoleRequest req(Role::kRewriter);
    req.Set("raw_instruction", active->subtask.raw_instruction)
        .Set("carryover", plan.context_carryover);
    if (!active->subtask.context_request.empty())
      req.Set("context_request", active->subtask.context_request);
    rewritten = Complete<std::string>(*provider_, req, [](const Json& j) {
                  std::string s = Trim(ParseStringField(j, "instruction"));
                  if (s.empty()) throw SchemaError("instruction must be non-empty");
                  return s;
                }).parsed;
  }
  active->subtask.rewritten_instruction = rewritten;
  Emit("subtask_dispatched",
       {{"package", active->subtask.target_package}, {"instruction", rewritten}});
  return rewritten;
}

}  // namespace mobagent
