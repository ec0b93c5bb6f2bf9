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

// Structural similarity between screens, used to recognise a page again.

#ifndef MOBAGENT_LEARNING_SIMILARITY_H_
#define MOBAGENT_LEARNING_SIMILARITY_H_

#include <string>

#include "mobagent/core/types.h"

namespace mobagent {

inline constexpr double kPageMatchThreshold = 0.85;

enum class SimilarityMetric { kLabelMultiset, kTreeEditDistance };

// Dice coefficient over the multisets of (class, resource-id) labels:
// 2 |A ∩ B| / (|A| + |B|). Text is ignored, so dynamic content does not
// break recognition.
double LabelSimilarity(const UiNode& a, const UiNode& b);

// 1 - TED(a, b) / max(|a|, |b|) with unit costs on the same labels
// (ordered trees, Zhang-Shasha).
double TreeEditSimilarity(const UiNode& a, const UiNode& b);
int TreeEditDistance(const UiNode& a, const UiNode& b);

double Similarity(const UiNode& a, const UiNode& b,
                  SimilarityMetric metric = SimilarityMetric::kLabelMultiset);

// Best page at or above the threshold; ties go to the smallest page_id.
const Page* MatchPage(const AppMap& map, const UiNode& tree,
                      SimilarityMetric metric = SimilarityMetric::kLabelMultiset,
                      double threshold = kPageMatchThreshold);

std::string NodeLabel(const UiNode& n);  // "class|resource-id"

}  // namespace mobagent

#endif  // MOBAGENT_LEARNING_SIMILARITY_H_
