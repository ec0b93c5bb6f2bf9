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

// Non-visual tree compression, four steps:
//   1. drop text nodes (with their subtrees) whose OCR reading disagrees
//      with their text: something is drawn over them;
//   2. caption image nodes (ImageView, or View without text);
//   3. fold each operable node's own non-operable content into its
//      description and hoist the nearest operable descendants;
//   4. replace non-operable single-child nodes by their child and prune
//      empty non-operable leaves.
// Operable nodes are never merged or pruned in steps 2-4.
//
// Output grammar, one line per node, two spaces of indent per level:
//   - [depth] class(resource-id) @[l,t][r,b] {attrs} "description"
// attrs is a comma list of clickable, scrollable and text="...".

#ifndef MOBAGENT_PERCEPTION_COMPRESSION_H_
#define MOBAGENT_PERCEPTION_COMPRESSION_H_

#include <map>
#include <string>
#include <vector>

#include "mobagent/core/types.h"
#include "mobagent/perception/providers.h"

namespace mobagent {

struct CompressionProviders {
  const OcrProvider* ocr = nullptr;
  const CaptionProvider* captioner = nullptr;
  const SummarizerProvider* summarizer = nullptr;
};

struct CompressedNode {
  std::string class_name;
  std::string resource_id;
  std::string text;
  Rect bounds;
  bool clickable = false;
  bool scrollable = false;
  std::string description;
  NodePath source_path;
  std::vector<CompressedNode> children;

  bool operable() const { return clickable || scrollable; }
};

// Extra description text per original node path, appended after step 4.
using KnowledgeAnnotations = std::map<NodePath, std::string>;

// Throws PerceptionDegraded when a provider fails; partial() is the
// rendering of the tree as far as it got.
CompressedNode CompressTree(const UiNode& tree, const Screenshot& shot,
                            const CompressionProviders& providers,
                            const KnowledgeAnnotations& knowledge = {});

std::string RenderCompressed(const CompressedNode& root);

std::string CompressTreeNonVisual(const UiNode& tree, const Screenshot& shot,
                                  const CompressionProviders& providers,
                                  const KnowledgeAnnotations& knowledge = {});

// True for ImageView-like classes and text-less View nodes.
bool IsImageNode(const UiNode& node);

}  // namespace mobagent

#endif  // MOBAGENT_PERCEPTION_COMPRESSION_H_
