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

// Requests to model-backed roles. A request is a role plus named text
// sections drawn from a fixed vocabulary; memory entries are kept apart so
// they can be dropped oldest-first when the payload exceeds its budget.

#ifndef MOBAGENT_RUNTIME_REQUEST_H_
#define MOBAGENT_RUNTIME_REQUEST_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace mobagent {

enum class Role {
  kGlobalPlanner,
  kReplanner,  // hybrid reflect + plan
  kReflector,
  kPlanner,
  kActionDecider,
  kContextExtractor,
  kUserInteractor,
  kTrickLearner,
  kCaptioner,
  kSummarizer,
  kRewriter,
  kJudge,
  kTaskDriver,
};

const char* RoleName(Role r);
Role ParseRole(const std::string& s);  // throws ValidationError
const std::vector<Role>& AllRoles();

// True for names in the section vocabulary.
bool IsKnownSection(const std::string& name);
const std::vector<std::string>& SectionVocabulary();

inline constexpr std::size_t kDefaultPayloadBudget = 32000;

class RoleRequest {
 public:
  explicit RoleRequest(Role role) : role_(role) {}

  Role role() const { return role_; }
  // Throws ValidationError for a name outside the vocabulary.
  RoleRequest& Set(const std::string& name, std::string text);
  RoleRequest& AddMemory(std::string entry);  // oldest first
  void set_budget(std::size_t budget) { budget_ = budget; }

  // Sections after memory truncation: memory entries are dropped from the
  // oldest until the total size fits the budget, then joined into the
  // "memory" section.
  std::map<std::string, std::string> Sections() const;
  std::string Section(const std::string& name) const;  // "" when absent
  bool Has(const std::string& name) const;

  // Stable digest of role and sections; section order does not matter.
  std::string Fingerprint() const;

  // Human-readable prompt text: "## name" headers in vocabulary order.
  std::string Render() const;

 private:
  Role role_;
  std::map<std::string, std::string> sections_;
  std::vector<std::string> memory_;
  std::size_t budget_ = kDefaultPayloadBudget;
};

}  // namespace mobagent

#endif  // MOBAGENT_RUNTIME_REQUEST_H_
