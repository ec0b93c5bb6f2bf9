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

// Accessibility-tree ingest. The dialect is the Android UI hierarchy dump:
// one element per node with attributes class, resource-id, text,
// bounds="[l,t][r,b]", clickable and scrollable. An optional <hierarchy>
// wrapper is accepted; with several top-level nodes a synthetic root
// spanning all of them is created.

#ifndef MOBAGENT_PERCEPTION_TREE_H_
#define MOBAGENT_PERCEPTION_TREE_H_

#include <functional>
#include <string>
#include <vector>

#include "mobagent/core/types.h"

namespace mobagent {

// Throws ParseError on malformed markup (with the byte offset) or on a
// malformed bounds attribute (naming the node).
UiNode ParseTree(const std::string& raw_xml);

// Inverse of ParseTree for trees that came from it (no synthetic root).
std::string SerializeTree(const UiNode& root);

// Renumbers draw_order in preorder.
void AssignDrawOrder(UiNode& root);

// Paths of all clickable or scrollable nodes in document order.
std::vector<NodePath> FindOperableNodes(const UiNode& tree);

// Preorder walk; the callback sees each node with its path.
void VisitPreorder(const UiNode& root,
                   const std::function<void(const UiNode&, const NodePath&)>& fn);

// Bounds parser shared with fixture loading. Throws ParseError.
Rect ParseBounds(const std::string& s, const std::string& node_label,
                 std::size_t byte_offset);

}  // namespace mobagent

#endif  // MOBAGENT_PERCEPTION_TREE_H_
