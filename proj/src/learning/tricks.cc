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

#include "mobagent/learning/tricks.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/runtime/responses.h"

namespace mobagent {

namespace {

std::string DedupKey(const std::string& text) { return ToLower(NormalizeWhitespace(text)); }

std::map<std::string, int> Counts(const std::string& s) {
  std::map<std::string, int> c;
  for (const auto& w : Tokenize(s)) ++c[w];
  return c;
}

std::string PlanLine(const Plan& p) {
  std::vector<std::string> items;
  for (const auto& i : p.overall_plan)
    items.push_back(i.description + " [" + ItemStatusName(i.status) + "]");
  return Join(items, "; ");
}

}  // namespace

double BagOfWordsRanker::Score(const std::string& query, const std::string& text) const {
  const auto q = Counts(query), t = Counts(text);
  double dot = 0, nq = 0, nt = 0;
  for (const auto& [w, c] : q) {
    nq += static_cast<double>(c) * c;
    auto it = t.find(w);
    if (it != t.end()) dot += static_cast<double>(c) * it->second;
  }
  for (const auto& [w, c] : t) nt += static_cast<double>(c) * c;
  if (dot == 0) return 0;
  return dot / (std::sqrt(nq) * std::sqrt(nt));
}

TrickStore::TrickStore() : ranker_(std::make_shared<BagOfWordsRanker>()) {}

TrickStore::TrickStore(std::shared_ptr<const TrickRanker> ranker)
    : ranker_(std::move(ranker)) {}

bool TrickStore::Add(const Trick& trick) {
  if (Trim(trick.text).empty()) throw ValidationError("trick text must be non-empty");
  if (trick.scope.empty()) throw ValidationError("trick scope must be non-empty");
  std::unique_lock lock(mu_);
  auto& list = by_scope_[trick.scope];
  const std::string key = DedupKey(trick.text);
  for (const auto& t : list)
    if (t.category == trick.category && DedupKey(t.text) == key) return false;
  list.push_back(trick);
  return true;
}

std::vector<Trick> TrickStore::Retrieve(TrickCategory category, const std::string& query,
                                        const std::string& app, int k) const {
  std::shared_lock lock(mu_);
  std::vector<std::pair<double, const Trick*>> scored;
  for (const std::string& scope : {app, std::string(kCommonScope)}) {
    auto it = by_scope_.find(scope);
    if (it == by_scope_.end()) continue;
    for (const auto& t : it->second) {
      if (t.category != category) continue;
      const double s = ranker_->Score(query, t.text);
      if (s > 0) scored.emplace_back(s, &t);
    }
    if (app == kCommonScope) break;
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Trick> out;
  for (const auto& [s, t] : scored) {
    if (static_cast<int>(out.size()) >= k) break;
    out.push_back(*t);
  }
  return out;
}

std::vector<Trick> TrickStore::Scope(const std::string& scope) const {
  std::shared_lock lock(mu_);
  auto it = by_scope_.find(scope);
  return it == by_scope_.end() ? std::vector<Trick>{} : it->second;
}

std::vector<std::string> TrickStore::Scopes() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [scope, list] : by_scope_)
    if (!list.empty()) out.push_back(scope);
  return out;
}

int TrickStore::Size() const {
  std::shared_lock lock(mu_);
  int n = 0;
  for (const auto& [scope, list] : by_scope_) n += static_cast<int>(list.size());
  return n;
}

std::filesystem::path TrickFilePath(const std::filesystem::path& knowledge_dir,
                                    const std::string& scope) {
  const std::string name = scope == kCommonScope ? "common" : scope;
  return knowledge_dir / "tricks" / (name + ".tricks");
}

void TrickStore::Load(const std::filesystem::path& knowledge_dir) {
  const auto dir = knowledge_dir / "tricks";
  if (!std::filesystem::is_directory(dir)) return;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".tricks") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const Json j = ReadJsonFile(f);
    for (const auto& t : j.at("tricks")) Add(t.get<Trick>());
  }
}

void TrickStore::Save(const std::filesystem::path& knowledge_dir) const {
  std::shared_lock lock(mu_);
  for (const auto& [scope, list] : by_scope_)
    WriteJsonFile(TrickFilePath(knowledge_dir, scope), Json{{"scope", scope}, {"tricks", list}});
}

std::string RenderRecordForLearning(const FullExecutionRecord& record) {
  std::ostringstream os;
  os << "instruction: " << record.instruction << "\n";
  if (!record.action_records.empty()) {
    os << "initial plan: " << PlanLine(record.action_records.front().plan) << "\n";
    os << "final plan: " << PlanLine(record.action_records.back().plan) << "\n";
  }
  for (const auto& r : record.action_records) {
    os << "round " << r.round << ": subgoal \"" << r.plan.current_subgoal << "\"";
    if (r.decision) os << "; actions " << r.decision->Describe();
    if (r.interrupted) os << "; interaction";
    if (r.decision_error) os << "; decision error: " << *r.decision_error;
    if (r.reflection) {
      os << "; result " << ActionResultCode(r.reflection->action_result());
      if (r.reflection->error_cause()) os << " (" << *r.reflection->error_cause() << ")";
    }
    for (const auto& o : r.outcomes)
      if (!o.effect.empty()) os << "; effect: " << o.effect;
    os << "\n";
  }
  os << "finished: " << (record.finished ? "yes" : "no") << "\n";
  return os.str();
}

std::string RenderTricks(const std::vector<Trick>& tricks) {
  std::string out;
  for (const auto& t : tricks) out += "- " + t.text + "\n";
  return out;
}

TrickDeltas LearnTricks(ModelProvider& provider, const FullExecutionRecord& record,
                        const std::string& app, const std::string& provenance,
                        TrickStore& store) {
  RoleRequest req(Role::kTrickLearner);
  req.Set("app", app).Set("instruction", record.instruction);
  req.Set("record", RenderRecordForLearning(record));
  const auto resp = Complete<TrickLearnerResponse>(provider, req, ParseTrickLearner);
  TrickDeltas deltas;
  auto merge = [&](const std::vector<std::string>& texts, TrickCategory c) {
    for (const auto& text : texts) {
      Trick t{c, app, text, provenance};
      if (store.Add(t)) deltas.added.push_back(t);
    }
  };
  merge(resp.parsed.planning, TrickCategory::kPlanning);
  merge(resp.parsed.execution, TrickCategory::kExecution);
  merge(resp.parsed.error_recovery, TrickCategory::kErrorRecovery);
  return deltas;
}

}  // namespace mobagent
