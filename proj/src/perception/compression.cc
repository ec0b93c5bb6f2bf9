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

#include "mobagent/perception/compression.h"

#include <sstream>

#include "mobagent/core/errors.h"
#include "mobagent/core/strings.h"

namespace mobagent {

namespace {

CompressedNode Convert(const UiNode& n, NodePath& path) {
  CompressedNode c;
  c.class_name = n.class_name;
  c.resource_id = n.resource_id;
  c.text = n.text;
  c.bounds = n.bounds;
  c.clickable = n.clickable;
  c.scrollable = n.scrollable;
  c.source_path = path;
  for (size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    c.children.push_back(Convert(n.children[i], path));
    path.pop_back();
  }
  return c;
}

std::string Fold(const std::vector<std::string>& parts) {
  std::vector<std::string> kept;
  for (const auto& p : parts)
    if (!p.empty()) kept.push_back(p);
  return Join(kept, "; ");
}

bool SameReading(const std::string& a, const std::string& b) {
  return ToLower(NormalizeWhitespace(a)) == ToLower(NormalizeWhitespace(b));
}

struct Context {
  const UiNode& screen;
  const Screenshot& shot;
  const CompressionProviders& providers;
};

// Step 1. The root is the window itself and is never dropped.
void DropOccluded(CompressedNode& n, const Context& ctx) {
  std::vector<CompressedNode> kept;
  for (auto& c : n.children) {
    if (!c.text.empty()) {
      const std::string seen = ctx.providers.ocr->Recognize(ctx.shot, ctx.screen, c.bounds);
      if (!SameReading(seen, c.text)) continue;
    }
    DropOccluded(c, ctx);
    kept.push_back(std::move(c));
  }
  n.children = std::move(kept);
}

bool IsImage(const std::string& class_name, const std::string& text) {
  const std::string simple = SimpleClassName(class_name);
  return EndsWith(simple, "ImageView") || (simple == "View" && text.empty());
}

// Step 2.
void CaptionImages(CompressedNode& n, const Context& ctx) {
  if (IsImage(n.class_name, n.text)) {
    UiNode probe;
    probe.class_name = n.class_name;
    probe.resource_id = n.resource_id;
    probe.bounds = n.bounds;
    n.description = Fold({n.description, ctx.providers.captioner->Caption(ctx.shot, probe)});
  }
  for (auto& c : n.children) CaptionImages(c, ctx);
}

// Non-operable content of an operable node and its nearest operable
// descendants, both in document order.
void Partition(CompressedNode& n, std::vector<SummaryItem>& content,
               std::vector<CompressedNode>& nearest) {
  for (auto& c : n.children) {
    if (c.operable()) {
      nearest.push_back(std::move(c));
      continue;
    }
    if (!c.text.empty() || !c.description.empty())
      content.push_back({c.class_name, c.text, c.description});
    Partition(c, content, nearest);
  }
}

// Step 3.
void Summarize(CompressedNode& n, const Context& ctx) {
  if (n.operable()) {
    std::vector<SummaryItem> content;
    std::vector<CompressedNode> nearest;
    Partition(n, content, nearest);
    if (!content.empty())
      n.description = Fold({n.description, ctx.providers.summarizer->Summarize(content)});
    n.children = std::move(nearest);
  }
  for (auto& c : n.children) Summarize(c, ctx);
}

bool EmptyLeaf(const CompressedNode& n) {
  return !n.operable() && n.children.empty() && n.text.empty() && n.description.empty();
}

// Step 4, bottom-up.
CompressedNode Merge(CompressedNode n) {
  std::vector<CompressedNode> kept;
  for (auto& c : n.children) {
    CompressedNode m = Merge(std::move(c));
    if (!EmptyLeaf(m)) kept.push_back(std::move(m));
  }
  n.children = std::move(kept);
  if (!n.operable() && n.children.size() == 1) {
    CompressedNode child = std::move(n.children.front());
    child.description = Fold({n.text, n.description, child.description});
    return child;
  }
  return n;
}

void Annotate(CompressedNode& n, const KnowledgeAnnotations& knowledge) {
  auto it = knowledge.find(n.source_path);
  if (it != knowledge.end()) n.description = Fold({n.description, it->second});
  for (auto& c : n.children) Annotate(c, knowledge);
}

std::string Sanitize(const std::string& s) {
  std::string out;
  for (char c : NormalizeWhitespace(s)) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void Render(const CompressedNode& n, int depth, std::ostringstream& os) {
  std::vector<std::string> attrs;
  if (n.clickable) attrs.push_back("clickable");
  if (n.scrollable) attrs.push_back("scrollable");
  if (!n.text.empty()) attrs.push_back("text=\"" + Sanitize(n.text) + "\"");
  os << std::string(depth * 2, ' ') << "- [" << depth << "] " << n.class_name << "("
     << n.resource_id << ") @" << n.bounds.ToString() << " {" << Join(attrs, ", ")
     << "} \"" << Sanitize(n.description) << "\"\n";
  for (const auto& c : n.children) Render(c, depth + 1, os);
}

}  // namespace

bool IsImageNode(const UiNode& node) { return IsImage(node.class_name, node.text); }

CompressedNode CompressTree(const UiNode& tree, const Screenshot& shot,
                            const CompressionProviders& providers,
                            const KnowledgeAnnotations& knowledge) {
  NodePath path;
  CompressedNode work = Convert(tree, path);
  const Context ctx{tree, shot, providers};
  int step = 1;
  try {
    DropOccluded(work, ctx);
    step = 2;
    CaptionImages(work, ctx);
    step = 3;
    Summarize(work, ctx);
    step = 4;
    work = Merge(std::move(work));
  } catch (const std::exception& e) {
    const std::string what =
        "compression step " + std::to_string(step) + " failed: " + e.what();
    throw PerceptionDegraded(what, RenderCompressed(work) + "# degraded: " + what + "\n",
                             step);
  }
  Annotate(work, knowledge);
  return work;
}

std::string RenderCompressed(const CompressedNode& root) {
  std::ostringstream os;
  Render(root, 0, os);
  return os.str();
}

std::string CompressTreeNonVisual(const UiNode& tree, const Screenshot& shot,
                                  const CompressionProviders& providers,
                                  const KnowledgeAnnotations& knowledge) {
  return RenderCompressed(CompressTree(tree, shot, providers, knowledge));
}

}  // namespace mobagent
