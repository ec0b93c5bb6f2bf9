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

#include "mobagent/runtime/provider.h"

#include <sstream>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"

namespace mobagent {

namespace {

std::map<std::string, std::string> StringMap(const Json& j, const char* key) {
  std::map<std::string, std::string> out;
  if (!j.contains(key)) return out;
  for (const auto& [name, value] : j.at(key).items()) {
    if (!IsKnownSection(name))
      throw ValidationError(std::string("script rule ") + key + " names unknown section '" +
                            name + "'");
    out[name] = value.get<std::string>();
  }
  return out;
}

// Replaces {{section}} references in every string leaf.
Json Expand(const Json& j, const std::map<std::string, std::string>& sections) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    for (const auto& [name, text] : sections) s = ReplaceAll(s, "{{" + name + "}}", text);
    return s;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& e : j) out.push_back(Expand(e, sections));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items()) out[k] = Expand(v, sections);
    return out;
  }
  return j;
}

bool Matches(const ScriptedProvider::Rule& rule, const RoleRequest& request,
             const std::map<std::string, std::string>& sections) {
  if (rule.role != request.role()) return false;
  for (const auto& [name, needle] : rule.when) {
    auto it = sections.find(name);
    if (it == sections.end() || !ContainsIgnoreCase(it->second, needle)) return false;
  }
  for (const auto& [name, needle] : rule.unless) {
    auto it = sections.find(name);
    if (it != sections.end() && ContainsIgnoreCase(it->second, needle)) return false;
  }
  return true;
}

}  // namespace

ScriptedProvider::ScriptedProvider(std::map<std::string, std::string> by_fingerprint,
                                   std::vector<Rule> rules)
    : by_fingerprint_(std::move(by_fingerprint)), rules_(std::move(rules)) {}

ScriptedProvider ScriptedProvider::FromJson(const Json& script) {
  std::map<std::string, std::string> exact;
  if (script.contains("responses"))
    for (const auto& [fp, raw] : script.at("responses").items())
      exact[fp] = raw.get<std::string>();
  std::vector<Rule> rules;
  if (script.contains("rules")) {
    int index = 0;
    for (const auto& r : script.at("rules")) {
      Rule rule;
      rule.role = ParseRole(r.at("role").get<std::string>());
      rule.when = StringMap(r, "when");
      rule.unless = StringMap(r, "unless");
      if (r.contains("respond")) rule.respond = r.at("respond");
      else if (r.contains("raw")) rule.raw = r.at("raw").get<std::string>();
      else throw ValidationError("script rule needs 'respond' or 'raw'");
      rule.name = r.value("name", std::string(RoleName(rule.role)) + "#" + std::to_string(index));
      rules.push_back(std::move(rule));
      ++index;
    }
  }
  return ScriptedProvider(std::move(exact), std::move(rules));
}

ScriptedProvider ScriptedProvider::FromFile(const std::filesystem::path& path) {
  try {
    return FromJson(ReadJsonFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

ScriptedProvider ScriptedProvider::FromFiles(const std::vector<std::filesystem::path>& paths) {
  ScriptedProvider merged;
  for (const auto& p : paths) {
    ScriptedProvider next = FromFile(p);
    for (auto& [fp, raw] : next.by_fingerprint_) merged.by_fingerprint_[fp] = raw;
    merged.PrependRules(next.rules_);
  }
  return merged;
}

void ScriptedProvider::PrependRules(const std::vector<Rule>& rules) {
  rules_.insert(rules_.begin(), rules.begin(), rules.end());
}

std::string ScriptedProvider::Complete(const RoleRequest& request) {
  auto exact = by_fingerprint_.find(request.Fingerprint());
  if (exact != by_fingerprint_.end()) return exact->second;
  const auto sections = request.Sections();
  for (const auto& rule : rules_) {
    if (!Matches(rule, request, sections)) continue;
    if (!rule.respond) return rule.raw;
    return "```json\n" + Expand(*rule.respond, sections).dump(2) + "\n```";
  }
  throw ProviderUnavailable(std::string("no scripted response for role ") +
                            RoleName(request.role()) + " (fingerprint " +
                            request.Fingerprint() + ")");
}

std::string RecordingProvider::Complete(const RoleRequest& request) {
  std::string raw = inner_->Complete(request);
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back({RoleName(request.role()), request.Fingerprint(), raw});
  return raw;
}

std::vector<CassetteEntry> RecordingProvider::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

void RecordingProvider::Save(const std::filesystem::path& path) const {
  std::ostringstream os;
  for (const auto& e : entries())
    os << Json{{"role", e.role}, {"fingerprint", e.fingerprint}, {"raw", e.raw}}.dump()
       << "\n";
  WriteFile(path, os.str());
}

std::vector<CassetteEntry> LoadCassette(const std::filesystem::path& path) {
  std::vector<CassetteEntry> out;
  int line_no = 0;
  for (const auto& line : Split(ReadFile(path), '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const Json j = Json::parse(line);
      out.push_back({j.at("role").get<std::string>(), j.at("fingerprint").get<std::string>(),
                     j.at("raw").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path.string() + " line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return out;
}

ReplayProvider::ReplayProvider(const std::vector<CassetteEntry>& entries) {
  for (const auto& e : entries) queue_[{e.role, e.fingerprint}].push_back(e.raw);
}

ReplayProvider ReplayProvider::FromFile(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw ProviderUnavailable("cassette not found: " + path.string());
  return ReplayProvider(LoadCassette(path));
}

std::string ReplayProvider::Complete(const RoleRequest& request) {
  ++calls_;
  std::lock_guard<std::mutex> lock(mu_);
  auto it = queue_.find({RoleName(request.role()), request.Fingerprint()});
  if (it == queue_.end() || it->second.empty()) {
    ++misses_;
    throw ProviderUnavailable(std::string("cassette has no response for role ") +
                              RoleName(request.role()) + " (fingerprint " +
                              request.Fingerprint() + ")");
  }
  std::string raw = std::move(it->second.front());
  it->second.pop_front();
  return raw;
}

int ReplayProvider::remaining() const {
  std::lock_guard<std::mutex> lock(mu_);
  int n = 0;
  for (const auto& [key, q] : queue_) n += static_cast<int>(q.size());
  return n;
}

std::string CountingProvider::Complete(const RoleRequest& request) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++counts_[request.role()];
  }
  return inner_->Complete(request);
}

int CountingProvider::count(Role role) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = counts_.find(role);
  return it == counts_.end() ? 0 : it->second;
}

int CountingProvider::total() const {
  std::lock_guard<std::mutex> lock(mu_);
  int n = 0;
  for (const auto& [r, c] : counts_) n += c;
  return n;
}

}  // namespace mobagent
