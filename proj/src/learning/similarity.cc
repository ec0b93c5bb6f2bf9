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

#include "mobagent/learning/similarity.h"

#include <algorithm>
#include <map>
#include <vector>

namespace mobagent {

namespace {

void CountLabels(const UiNode& n, std::map<std::string, int>& counts) {
  ++counts[NodeLabel(n)];
  for (const auto& c : n.children) CountLabels(c, counts);
}

// Postorder flattening for Zhang-Shasha.
struct PostTree {
  std::vector<std::string> labels;
  std::vector<int> leftmost;  // leftmost leaf descendant, postorder index
  std::vector<int> keyroots;
};

int Build(const UiNode& n, PostTree& t) {
  int first_leaf = -1;
  for (const auto& c : n.children) {
    int lm = Build(c, t);
    if (first_leaf < 0) first_leaf = lm;
  }
  const int self = static_cast<int>(t.labels.size());
  t.labels.push_back(NodeLabel(n));
  t.leftmost.push_back(first_leaf < 0 ? self : first_leaf);
  return t.leftmost.back();
}

PostTree Flatten(const UiNode& root) {
  PostTree t;
  Build(root, t);
  const int n = static_cast<int>(t.labels.size());
  // Keyroots: the highest node for each distinct leftmost leaf.
  std::map<int, int> highest;
  for (int i = 0; i < n; ++i) highest[t.leftmost[i]] = i;
  for (const auto& [lm, node] : highest) t.keyroots.push_back(node);
  std::sort(t.keyroots.begin(), t.keyroots.end());
  return t;
}

}  // namespace

std::string NodeLabel(const UiNode& n) { return n.class_name + "|" + n.resource_id; }

double LabelSimilarity(const UiNode& a, const UiNode& b) {
  std::map<std::string, int> ca, cb;
  CountLabels(a, ca);
  CountLabels(b, cb);
  int total_a = 0, total_b = 0, common = 0;
  for (const auto& [label, n] : ca) {
    total_a += n;
    auto it = cb.find(label);
    if (it != cb.end()) common += std::min(n, it->second);
  }
  for (const auto& [label, n] : cb) total_b += n;
  if (total_a + total_b == 0) return 1.0;
  return 2.0 * common / (total_a + total_b);
}

int TreeEditDistance(const UiNode& a, const UiNode& b) {
  const PostTree ta = Flatten(a), tb = Flatten(b);
  const int n = static_cast<int>(ta.labels.size());
  const int m = static_cast<int>(tb.labels.size());
  std::vector<std::vector<int>> td(n, std::vector<int>(m, 0));
  std::vector<std::vector<int>> fd(n + 1, std::vector<int>(m + 1, 0));
  for (int i : ta.keyroots) {
    for (int j : tb.keyroots) {
      const int li = ta.leftmost[i], lj = tb.leftmost[j];
      // fd is indexed from the leftmost leaves; offset by one for the empty forest.
      auto F = [&](int x, int y) -> int& { return fd[x - li + 1][y - lj + 1]; };
      fd[0][0] = 0;
      for (int x = li; x <= i; ++x) fd[x - li + 1][0] = fd[x - li][0] + 1;
      for (int y = lj; y <= j; ++y) fd[0][y - lj + 1] = fd[0][y - lj] + 1;
      for (int x = li; x <= i; ++x) {
        for (int y = lj; y <= j; ++y) {
          const int del = F(x - 1, y) + 1;
          const int ins = F(x, y - 1) + 1;
          if (ta.leftmost[x] == li && tb.leftmost[y] == lj) {
            const int sub = F(x - 1, y - 1) + (ta.labels[x] == tb.labels[y] ? 0 : 1);
            F(x, y) = std::min({del, ins, sub});
            td[x][y] = F(x, y);
          } else {
            const int sub = fd[ta.leftmost[x] - li][tb.leftmost[y] - lj] + td[x][y];
            F(x, y) = std::min({del, ins, sub});
          }
        }
      }
    }
  }
  return td[n - 1][m - 1];
}

double TreeEditSimilarity(const UiNode& a, const UiNode& b) {
  const int size = std::max(a.Count(), b.Count());
  if (size == 0) return 1.0;
  return 1.0 - static_cast<double>(TreeEditDistance(a, b)) / size;
}

double Similarity(const UiNode& a, const UiNode& b, SimilarityMetric metric) {
  return metric == SimilarityMetric::kLabelMultiset ? LabelSimilarity(a, b)
                                                    : TreeEditSimilarity(a, b);
}

const Page* MatchPage(const AppMap& map, const UiNode& tree, SimilarityMetric metric,
                      double threshold) {
  const Page* best = nullptr;
  double best_score = -1.0;
  for (const auto& page : map.pages) {
    const double s = Similarity(page.canonical_tree, tree, metric);
    if (s < threshold) continue;
    if (s > best_score || (s == best_score && page.page_id < best->page_id)) {
      best = &page;
      best_score = s;
    }
  }
  return best;
}

}  // namespace mobagent
