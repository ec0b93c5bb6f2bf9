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


#include "testing/properties.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <vector>

#include "mobagent/core/errors.h"
#include "mobagent/perception/compression.h"
#include "mobagent/perception/providers.h"
#include "mobagent/perception/set_of_marks.h"
#include "testing/test_util.h"

namespace mobagent::testing {

namespace {

struct FlatNode {
  const UiNode* node;
  NodePath path;
};

void FlattenInto(const UiNode& n, NodePath& path, std::vector<FlatNode>& out) {
  out.push_back({&n, path});
  for (size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    FlattenInto(n.children[i], path, out);
    path.pop_back();
  }
}

std::vector<FlatNode> Flatten(const UiNode& root) {
  std::vector<FlatNode> out;
  NodePath p;
  FlattenInto(root, p, out);
  return out;
}

bool IsPrefix(const NodePath& a, const NodePath& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool Inside(const Rect& outer, const Rect& inner) {
  return inner.left >= outer.left && inner.right <= outer.right && inner.top >= outer.top &&
         inner.bottom <= outer.bottom;
}

std::string Norm(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string Box(const Rect& r) {
  std::ostringstream os;
  os << "[" << r.left << "," << r.top << "][" << r.right << "," << r.bottom << "]";
  return os.str();
}

std::string Show(const NodePath& p) {
  std::string s;
  for (int i : p) s += "/" + std::to_string(i);
  return s.empty() ? "/" : s;
}

void Collect(const CompressedNode& n, std::vector<const CompressedNode*>& out) {
  out.push_back(&n);
  for (const auto& c : n.children) Collect(c, out);
}

}  // namespace

OcrTable RandomOcrTable(std::mt19937& rng, const UiNode& tree) {
  OcrTable table;
  for (const auto& f : Flatten(tree))
    if (!f.node->text.empty() && Chance(rng, 0.15)) table[Box(f.node->bounds)] = "occluded";
  return table;
}

std::string CheckCompression(const UiNode& tree, const OcrTable& ocr_table) {
  const auto flat = Flatten(tree);
  // Oracle reading of a region: forced value, else the last text node in
  // document order whose bounds hold the region.
  auto reading = [&](const Rect& region) {
    auto it = ocr_table.find(Box(region));
    if (it != ocr_table.end()) return it->second;
    std::string seen;
    for (const auto& f : flat)
      if (!f.node->text.empty() && Inside(f.node->bounds, region)) seen = f.node->text;
    return seen;
  };
  std::vector<NodePath> dropped_roots;
  for (const auto& f : flat) {
    if (f.path.empty() || f.node->text.empty()) continue;
    if (Norm(reading(f.node->bounds)) != Norm(f.node->text)) dropped_roots.push_back(f.path);
  }
  auto dropped = [&](const NodePath& p) {
    for (const auto& d : dropped_roots)
      if (IsPrefix(d, p)) return true;
    return false;
  };

  ScriptedOcr ocr(ocr_table);
  ScriptedCaptioner captioner;
  ConcatSummarizer summarizer;
  CompressionProviders providers{&ocr, &captioner, &summarizer};
  const Screenshot shot{"sim://prop", ""};
  const CompressedNode out = CompressTree(tree, shot, providers);
  std::vector<const CompressedNode*> nodes;
  Collect(out, nodes);

  std::map<NodePath, int> seen;
  for (const auto* n : nodes) {
    ++seen[n->source_path];
    if (dropped(n->source_path)) return "occluded node " + Show(n->source_path) + " survived";
    if (!n->operable() && n->children.size() == 1)
      return "single-child chain at " + Show(n->source_path) + " not merged";
    if (n != &out && !n->operable() && n->children.empty() && n->text.empty() &&
        n->description.empty())
      return "empty leaf " + Show(n->source_path) + " kept";
  }
  for (const auto& f : flat) {
    if (!f.node->operable() || dropped(f.path)) continue;
    const int k = seen.count(f.path) ? seen[f.path] : 0;
    if (k != 1)
      return "operable node " + Show(f.path) + " appears " + std::to_string(k) + " times";
  }
  const std::string a = RenderCompressed(out);
  const UiNode copy = tree;
  const std::string b = CompressTreeNonVisual(copy, shot, providers);
  if (a != b) return "compression is not byte-deterministic";
  return "";
}

std::string CheckSomBijection(const UiNode& tree, std::mt19937& rng) {
  const auto flat = Flatten(tree);
  const auto som = BuildSetOfMarks(tree);
  int operable = 0;
  for (const auto& f : flat) operable += f.node->operable();
  if (static_cast<int>(som.size()) != operable) return "mark count differs from operable count";

  for (const auto& e : som) {
    const UiNode* node = tree.Find(e.node_path);
    if (!node || !node->operable()) return "mark " + std::to_string(e.mark) + " not on an operable node";
    // Overdrawn: some node after e's subtree in document order holds its bbox.
    size_t self = 0;
    while (flat[self].path != e.node_path) ++self;
    bool overdrawn = false;
    for (size_t j = self + 1; j < flat.size(); ++j)
      if (!IsPrefix(e.node_path, flat[j].path) && Inside(flat[j].node->bounds, e.bbox))
        overdrawn = true;
    const ActionDecision d({Tap{{}, e.mark}}, "");
    if (overdrawn || !e.valid) {
      if (overdrawn && e.valid) return "overdrawn mark " + std::to_string(e.mark) + " is valid";
      try {
        ResolveMarks(d, som);
        return "invalid mark " + std::to_string(e.mark) + " resolved";
      } catch (const InvalidMark&) {
      }
      for (int k = 0; k < 8; ++k) {
        const Point p{Uniform(rng, e.bbox.left, std::max(e.bbox.left, e.bbox.right - 1)),
                      Uniform(rng, e.bbox.top, std::max(e.bbox.top, e.bbox.bottom - 1))};
        auto hit = RelocateMark(som, p);
        if (hit && hit->mark == e.mark) return "invalid mark " + std::to_string(e.mark) + " relocated";
      }
      continue;
    }
    const auto resolved = ResolveMarks(d, som);
    const Point p = std::get<Tap>(resolved.sequence()[0]).at;
    if (!e.bbox.Contains(p)) return "click point of mark " + std::to_string(e.mark) + " outside bbox";
    auto back = RelocateMark(som, p);
    if (!back || back->mark != e.mark)
      return "mark " + std::to_string(e.mark) + " relocates to " +
             (back ? std::to_string(back->mark) : std::string("nothing"));
  }
  return "";
}

double OracleLabelSimilarity(const UiNode& a, const UiNode& b) {
  std::vector<std::string> la, lb;
  for (const auto& f : Flatten(a)) la.push_back(f.node->class_name + "|" + f.node->resource_id);
  for (const auto& f : Flatten(b)) lb.push_back(f.node->class_name + "|" + f.node->resource_id);
  // Greedy pairing is exact for multiset intersection.
  std::vector<bool> used(lb.size(), false);
  int common = 0;
  for (const auto& x : la) {
    for (size_t j = 0; j < lb.size(); ++j) {
      if (!used[j] && lb[j] == x) {
        used[j] = true;
        ++common;
        break;
      }
    }
  }
  return 2.0 * common / static_cast<double>(la.size() + lb.size());
}

}  // namespace mobagent::testing
