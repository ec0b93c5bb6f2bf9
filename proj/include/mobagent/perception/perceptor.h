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

#ifndef MOBAGENT_PERCEPTION_PERCEPTOR_H_
#define MOBAGENT_PERCEPTION_PERCEPTOR_H_

#include <string>

#include "mobagent/core/types.h"
#include "mobagent/learning/similarity.h"
#include "mobagent/perception/compression.h"

namespace mobagent {

// What a device hands back for one screen.
struct RawScreen {
  Screenshot screenshot;
  std::string xml;
};

struct PerceptorOptions {
  PerceptionMode mode = PerceptionMode::kVisual;
  // Visual mode only: caption text-less View leaves the marks missed.
  bool recover_overlooked = false;
  SimilarityMetric metric = SimilarityMetric::kLabelMultiset;
};

class ScreenPerceptor {
 public:
  ScreenPerceptor(PerceptorOptions options, CompressionProviders providers)
      : options_(options), providers_(providers) {}

  // Throws ParseError. A failing compression provider degrades the text
  // instead of failing the call.
  ScreenPerception Perceive(const RawScreen& raw, const AppMap* map = nullptr) const;
  ScreenPerception PerceiveTree(const UiNode& tree, const Screenshot& shot,
                                const AppMap* map = nullptr) const;

  const PerceptorOptions& options() const { return options_; }

 private:
  std::string VisualText(const UiNode& tree, const std::vector<MarkEntry>& marks,
                         const std::map<NodePath, std::string>& knowledge,
                         const Screenshot& shot) const;

  PerceptorOptions options_;
  CompressionProviders providers_;
};

}  // namespace mobagent

#endif  // MOBAGENT_PERCEPTION_PERCEPTOR_H_
