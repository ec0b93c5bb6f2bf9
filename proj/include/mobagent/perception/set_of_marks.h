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

// Set-of-marks grounding for the visual perception mode.
//
// Every operable node gets a mark, numbered from 1 in document order. An
// entry is invalid when a single node drawn later, outside the entry's own
// subtree, contains its whole bbox. Valid entries get a click point that no
// later valid entry covers: the bbox midpoint when it is free, otherwise the
// closest free point; an entry with no free point is invalid too. This makes
// RelocateMark(center) return the entry it came from.

#ifndef MOBAGENT_PERCEPTION_SET_OF_MARKS_H_
#define MOBAGENT_PERCEPTION_SET_OF_MARKS_H_

#include <optional>
#include <string>
#include <vector>

#include "mobagent/core/types.h"

namespace mobagent {

std::vector<MarkEntry> BuildSetOfMarks(const UiNode& tree);

// SVG overlay with one labelled rectangle per valid entry, sized to the root.
std::string RenderMarkedImage(const UiNode& tree, const std::vector<MarkEntry>& marks,
                              const Screenshot& screenshot);

// Replaces mark references by coordinates. Throws UnknownMark / InvalidMark.
ActionDecision ResolveMarks(const ActionDecision& decision,
                            const std::vector<MarkEntry>& som);

// Topmost valid entry whose bbox contains `p`.
std::optional<MarkEntry> RelocateMark(const std::vector<MarkEntry>& som, Point p);

}  // namespace mobagent

#endif  // MOBAGENT_PERCEPTION_SET_OF_MARKS_H_
