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

#include "mobagent/perception/providers.h"

#include "mobagent/core/strings.h"
#include "mobagent/perception/tree.h"

namespace mobagent {

std::string SimulatedOcr::Recognize(const Screenshot&, const UiNode& screen,
                                    const Rect& region) const {
  std::string seen;
  // Preorder is draw order, so the last hit is the topmost.
  VisitPreorder(screen, [&](const UiNode& n, const NodePath&) {
    if (!n.text.empty() && n.bounds.Contains(region)) seen = n.text;
  });
  return seen;
}

std::string ScriptedOcr::Recognize(const Screenshot& shot, const UiNode& screen,
                                   const Rect& region) const {
  auto it = table_.find(region.ToString());
  if (it != table_.end()) return it->second;
  return fallback_.Recognize(shot, screen, region);
}

std::string ScriptedCaptioner::Caption(const Screenshot&, const UiNode& node) const {
  auto it = table_.find(node.resource_id);
  if (it != table_.end()) return it->second;
  if (node.resource_id.empty()) return "icon";
  const size_t slash = node.resource_id.rfind('/');
  std::string name = slash == std::string::npos ? node.resource_id
                                                : node.resource_id.substr(slash + 1);
  return "icon " + ReplaceAll(name, "_", " ");
}

std::string ConcatSummarizer::Summarize(const std::vector<SummaryItem>& items) const {
  std::vector<std::string> parts;
  for (const auto& item : items) {
    if (!item.text.empty()) parts.push_back(item.text);
    if (!item.description.empty()) parts.push_back(item.description);
  }
  return Join(parts, ", ");
}

}  // namespace mobagent
