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

// Model providers return raw text for a RoleRequest. All implementations
// here are safe to call from several threads at once.

#ifndef MOBAGENT_RUNTIME_PROVIDER_H_
#define MOBAGENT_RUNTIME_PROVIDER_H_

#include <atomic>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mobagent/runtime/request.h"

namespace mobagent {

class ModelProvider {
 public:
  virtual ~ModelProvider() = default;
  // Throws ProviderUnavailable when no answer can be produced.
  virtual std::string Complete(const RoleRequest& request) = 0;
};

// Canned answers. Exact fingerprints are looked up first, then rules in
// order. A rule matches when the role agrees, every "when" section contains
// its substring (case-insensitive) and no "unless" section does. Strings in
// a rule's response may reference sections as {{name}}.
//
// Script file:
//   {"responses": {"<fingerprint>": "<raw>"},
//    "rules": [{"role": "...", "when": {...}, "unless": {...},
//               "respond": <json> | "raw": "<text>"}]}
class ScriptedProvider : public ModelProvider {
 public:
  struct Rule {
    Role role;
    std::map<std::string, std::string> when;
    std::map<std::string, std::string> unless;
    std::optional<nlohmann::json> respond;  // fenced as a json block
    std::string raw;                        // used verbatim when respond is absent
    std::string name;                       // for diagnostics
  };

  ScriptedProvider() = default;
  ScriptedProvider(std::map<std::string, std::string> by_fingerprint,
                   std::vector<Rule> rules);

  static ScriptedProvider FromJson(const nlohmann::json& script);
  static ScriptedProvider FromFile(const std::filesystem::path& path);
  // Later scripts take precedence over earlier ones.
  static ScriptedProvider FromFiles(const std::vector<std::filesystem::path>& paths);

  std::string Complete(const RoleRequest& request) override;

  void AddRule(Rule rule) { rules_.push_back(std::move(rule)); }
  void PrependRules(const std::vector<Rule>& rules);
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::map<std::string, std::string> by_fingerprint_;
  std::vector<Rule> rules_;
};

// Wraps a callable; handy in tests.
class FunctionProvider : public ModelProvider {
 public:
  using Fn = std::function<std::string(const RoleRequest&)>;
  explicit FunctionProvider(Fn fn) : fn_(std::move(fn)) {}
  std::string Complete(const RoleRequest& request) override { return fn_(request); }

 private:
  Fn fn_;
};

struct CassetteEntry {
  std::string role;
  std::string fingerprint;
  std::string raw;
  bool operator==(const CassetteEntry&) const = default;
};

// Forwards to `inner` and keeps every exchange, in call order.
class RecordingProvider : public ModelProvider {
 public:
  explicit RecordingProvider(ModelProvider* inner) : inner_(inner) {}
  std::string Complete(const RoleRequest& request) override;

  std::vector<CassetteEntry> entries() const;
  // One JSON object per line.
  void Save(const std::filesystem::path& path) const;

 private:
  ModelProvider* inner_;
  mutable std::mutex mu_;
  std::vector<CassetteEntry> entries_;
};

// Serves a cassette. Each (role, fingerprint) key answers its recorded
// responses in order; a request with nothing left is a miss.
class ReplayProvider : public ModelProvider {
 public:
  explicit ReplayProvider(const std::vector<CassetteEntry>& entries);
  static ReplayProvider FromFile(const std::filesystem::path& path);

  std::string Complete(const RoleRequest& request) override;

  int calls() const { return calls_; }
  int misses() const { return misses_; }
  // Recorded answers never served.
  int remaining() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::deque<std::string>> queue_;
  std::atomic<int> calls_{0};
  std::atomic<int> misses_{0};
};

// Counts calls per role.
class CountingProvider : public ModelProvider {
 public:
  explicit CountingProvider(ModelProvider* inner) : inner_(inner) {}
  std::string Complete(const RoleRequest& request) override;
  int count(Role role) const;
  int total() const;

 private:
  ModelProvider* inner_;
  mutable std::mutex mu_;
  std::map<Role, int> counts_;
};

std::vector<CassetteEntry> LoadCassette(const std::filesystem::path& path);

}  // namespace mobagent

#endif  // MOBAGENT_RUNTIME_PROVIDER_H_
