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

// Trick store: short pieces of advice per app plus a Common scope of
// general ones. Learning only ever adds app-scoped tricks; Common tricks
// come from files and are never changed by learning.

#ifndef MOBAGENT_LEARNING_TRICKS_H_
#define MOBAGENT_LEARNING_TRICKS_H_

#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "mobagent/core/types.h"
#include "mobagent/runtime/provider.h"

namespace mobagent {

inline constexpr int kDefaultTopK = 5;

class TrickRanker {
 public:
  virtual ~TrickRanker() = default;
  // Relevance of `text` to `query`; 0 means unrelated.
  virtual double Score(const std::string& query, const std::string& text) const = 0;
};

// Cosine similarity of lowercase word-count vectors.
class BagOfWordsRanker : public TrickRanker {
 public:
  double Score(const std::string& query, const std::string& text) const override;
};

struct TrickDeltas {
  std::vector<Trick> added;
};

class TrickStore {
 public:
  TrickStore();
  explicit TrickStore(std::shared_ptr<const TrickRanker> ranker);

  // Adds unless an equal (normalized) text exists in the same scope and
  // category. Returns whether it was added.
  bool Add(const Trick& trick);

  // Highest-scoring tricks of `category` from `app` and Common; unrelated
  // (zero score) tricks are left out. Ties keep app-before-Common and
  // insertion order.
  std::vector<Trick> Retrieve(TrickCategory category, const std::string& query,
                              const std::string& app, int k = kDefaultTopK) const;

  std::vector<Trick> Scope(const std::string& scope) const;
  std::vector<std::string> Scopes() const;
  int Size() const;

  // tricks/<scope>.tricks, with Common stored as tricks/common.tricks.
  void Load(const std::filesystem::path& knowledge_dir);
  void Save(const std::filesystem::path& knowledge_dir) const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::vector<Trick>> by_scope_;
  std::shared_ptr<const TrickRanker> ranker_;
};

std::filesystem::path TrickFilePath(const std::filesystem::path& knowledge_dir,
                                    const std::string& scope);

// Asks the trick_learner role for advice drawn from a finished record and
// merges the answer into `store` under `app`. Nothing is merged when the
// role fails (MalformedResponse / ProviderUnavailable propagate).
TrickDeltas LearnTricks(ModelProvider& provider, const FullExecutionRecord& record,
                        const std::string& app, const std::string& provenance,
                        TrickStore& store);

// Plain-text rendering of a record used as the learner's input.
std::string RenderRecordForLearning(const FullExecutionRecord& record);

std::string RenderTricks(const std::vector<Trick>& tricks);

}  // namespace mobagent

#endif  // MOBAGENT_LEARNING_TRICKS_H_
