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

// App Map learning from executed actions and knowledge lookup for
// perception.
//
// A page's canonical tree only grows: when a known page shows new nodes
// they are appended under their aligned parent, so existing component
// paths never move. Children are aligned by longest common subsequence of
// their (class, resource-id) labels.

#ifndef MOBAGENT_LEARNING_APP_MAP_H_
#define MOBAGENT_LEARNING_APP_MAP_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobagent/core/types.h"
#include "mobagent/learning/similarity.h"

namespace mobagent {

class ComponentDescriber {
 public:
  virtual ~ComponentDescriber() = default;
  // Non-empty description of `node` as it appears on `screen`.
  virtual std::string DescribeComponent(const UiNode& node, const UiNode& screen) const = 0;
};

class EffectSummarizer {
 public:
  virtual ~EffectSummarizer() = default;
  // `diff` lists changed nodes one per line; never called with an empty diff.
  virtual std::string SummarizeEffect(const std::string& action,
                                      const std::string& diff) const = 0;
};

// Uses the node's own text, else the texts beneath it.
class TextDescriber : public ComponentDescriber {
 public:
  std::string DescribeComponent(const UiNode& node, const UiNode& screen) const override;
};

// "shows <first added text>" or a count of changed nodes.
class DiffEffectSummarizer : public EffectSummarizer {
 public:
  std::string SummarizeEffect(const std::string& action,
                              const std::string& diff) const override;
};

inline constexpr const char kNoVisibleChange[] = "no visible change";

struct ActionTransition {
  ScreenRef prev;
  ActionDecision decision;  // coordinates resolved
  ScreenRef next;
};

struct MapLearnOptions {
  const ComponentDescriber* describer = nullptr;
  const EffectSummarizer* effects = nullptr;
  SimilarityMetric metric = SimilarityMetric::kLabelMultiset;
  double threshold = kPageMatchThreshold;
};

struct MapLearnStats {
  int pages_created = 0;
  int pages_patched = 0;
  int components_added = 0;
  int triggers_added = 0;
  int failures = 0;  // pages or triggers rolled back
};

AppMap LearnAppMap(const std::vector<ActionTransition>& actions, AppMap map,
                   const MapLearnOptions& options, MapLearnStats* stats = nullptr);

// Deepest node containing `p`; among equally deep nodes the latest drawn.
std::optional<NodePath> LocalizeNode(const UiNode& tree, Point p);

// Aligns `current` against `canonical`: canonical path -> current path for
// every matched node.
std::map<NodePath, NodePath> AlignTrees(const UiNode& canonical, const UiNode& current);

// Line diff of two screens: "+ ..." added, "- ..." removed, "~ ..." text
// changed. Empty when nothing differs.
std::string TreeDiff(const UiNode& before, const UiNode& after);

// Knowledge line for a component: description plus "kind: effect" per trigger.
std::string KnowledgeText(const ComponentKnowledge& c);

// Knowledge keyed by node path in `current`.
std::map<NodePath, std::string> KnowledgeFor(const Page& page, const UiNode& current);

std::string PageIdFor(const std::string& app, const UiNode& tree);

std::filesystem::path AppMapPath(const std::filesystem::path& knowledge_dir,
                                 const std::string& app);
AppMap LoadAppMap(const std::filesystem::path& knowledge_dir, const std::string& app);
void SaveAppMap(const std::filesystem::path& knowledge_dir, const AppMap& map);

}  // namespace mobagent

#endif  // MOBAGENT_LEARNING_APP_MAP_H_
