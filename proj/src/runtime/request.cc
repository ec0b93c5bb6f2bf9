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

#include "mobagent/runtime/request.h"

#include <algorithm>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"

namespace mobagent {

namespace {

struct RoleEntry {
  Role role;
  const char* name;
};

constexpr RoleEntry kRoles[] = {
    {Role::kGlobalPlanner, "global_planner"},
    {Role::kReplanner, "replanner"},
    {Role::kReflector, "reflector"},
    {Role::kPlanner, "planner"},
    {Role::kActionDecider, "action_decider"},
    {Role::kContextExtractor, "context_extractor"},
    {Role::kUserInteractor, "user_interactor"},
    {Role::kTrickLearner, "trick_learner"},
    {Role::kCaptioner, "captioner"},
    {Role::kSummarizer, "summarizer"},
    {Role::kRewriter, "rewriter"},
    {Role::kJudge, "judge"},
    {Role::kTaskDriver, "task_driver"},
};

}  // namespace

const char* RoleName(Role r) {
  for (const auto& e : kRoles)
    if (e.role == r) return e.name;
  return "unknown";
}

Role ParseRole(const std::string& s) {
  for (const auto& e : kRoles)
    if (s == e.name) return e.role;
  throw ValidationError("unknown role '" + s + "'");
}

const std::vector<Role>& AllRoles() {
  static const std::vector<Role> roles = [] {
    std::vector<Role> out;
    for (const auto& e : kRoles) out.push_back(e.role);
    return out;
  }();
  return roles;
}

const std::vector<std::string>& SectionVocabulary() {
  static const std::vector<std::string> names = {
      "instruction",      "app_metadata",     "global_plan",   "trace",
      "carryover",        "raw_instruction",  "context_request", "plan",
      "subgoal",          "screen",           "last_action",   "outcomes",
      "reflection",       "revision",         "memory",        "context",
      "tricks",           "interaction",      "dialog_history", "dialog_summary",
      "reply",            "app",              "record",        "node",
      "content",          "diff",             "requirements",  "key_steps",
      "item",             "evidence",         "question",      "repair_hint",
      "previous_screen",
  };
  return names;
}

bool IsKnownSection(const std::string& name) {
  const auto& v = SectionVocabulary();
  return std::find(v.begin(), v.end(), name) != v.end();
}

RoleRequest& RoleRequest::Set(const std::string& name, std::string text) {
  if (!IsKnownSection(name)) throw ValidationError("unknown request section '" + name + "'");
  if (name == "memory") throw ValidationError("memory is built from AddMemory entries");
  sections_[name] = std::move(text);
  return *this;
}

RoleRequest& RoleRequest::AddMemory(std::string entry) {
  memory_.push_back(std::move(entry));
  return *this;
}

std::map<std::string, std::string> RoleRequest::Sections() const {
  std::map<std::string, std::string> out = sections_;
  if (memory_.empty()) return out;
  std::size_t fixed = 0;
  for (const auto& [name, text] : sections_) fixed += name.size() + text.size();
  size_t first = 0;
  std::size_t mem = 0;
  for (const auto& m : memory_) mem += m.size() + 1;
  while (first < memory_.size() && fixed + mem > budget_) {
    mem -= memory_[first].size() + 1;
    ++first;
  }
  std::string joined;
  for (size_t i = first; i < memory_.size(); ++i) joined += memory_[i] + "\n";
  out["memory"] = joined;
  return out;
}

std::string RoleRequest::Section(const std::string& name) const {
  const auto all = Sections();
  auto it = all.find(name);
  return it == all.end() ? "" : it->second;
}

bool RoleRequest::Has(const std::string& name) const {
  if (name == "memory") return !memory_.empty();
  return sections_.count(name) > 0;
}

std::string RoleRequest::Fingerprint() const {
  // std::map iterates sorted, and Json objects dump with sorted keys.
  Json j{{"role", RoleName(role_)}, {"sections", Sections()}};
  return Hex64(Fnv1a64(j.dump()));
}

std::string RoleRequest::Render() const {
  const auto all = Sections();
  std::string out = "# role: " + std::string(RoleName(role_)) + "\n";
  for (const auto& name : SectionVocabulary()) {
    auto it = all.find(name);
    if (it == all.end()) continue;
    out += "\n## " + name + "\n" + it->second + "\n";
  }
  return out;
}

}  // namespace mobagent
