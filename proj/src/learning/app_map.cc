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

#include "mobagent/learning/app_map.h"

#include <algorithm>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/perception/tree.h"

namespace mobagent {

namespace {

// Index pairs of a longest common subsequence of child labels; earliest
// matches win so the result is deterministic.
std::vector<std::pair<int, int>> AlignChildren(const UiNode& a, const UiNode& b) {
  const size_t n = a.children.size(), m = b.children.size();
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
  std::vector<std::string> la(n), lb(m);
  for (size_t i = 0; i < n; ++i) la[i] = NodeLabel(a.children[i]);
  for (size_t j = 0; j < m; ++j) lb[j] = NodeLabel(b.children[j]);
  for (size_t i = n; i-- > 0;)
    for (size_t j = m; j-- > 0;)
      dp[i][j] = la[i] == lb[j] ? dp[i + 1][j + 1] + 1
                                : std::max(dp[i + 1][j], dp[i][j + 1]);
  std::vector<std::pair<int, int>> pairs;
  size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (la[i] == lb[j] && dp[i][j] == dp[i + 1][j + 1] + 1) {
      pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      ++i;
      ++j;
    } else if (dp[i + 1][j] >= dp[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return pairs;
}

void Align(const UiNode& a, NodePath& pa, const UiNode& b, NodePath& pb,
           std::map<NodePath, NodePath>& out) {
  out[pa] = pb;
  for (auto [i, j] : AlignChildren(a, b)) {
    pa.push_back(i);
    pb.push_back(j);
    Align(a.children[i], pa, b.children[j], pb, out);
    pa.pop_back();
    pb.pop_back();
  }
}

std::string Line(char sign, const UiNode& n) {
  std::string s = std::string(1, sign) + " " + SimpleClassName(n.class_name) + "(" +
                  n.resource_id + ")";
  if (!n.text.empty()) s += " \"" + n.text + "\"";
  return s;
}

void SubtreeLines(char sign, const UiNode& n, bool root,
                  std::vector<std::string>& lines) {
  if (root || !n.text.empty()) lines.push_back(Line(sign, n));
  for (const auto& c : n.children) SubtreeLines(sign, c, false, lines);
}

void Diff(const UiNode& a, const UiNode& b, std::vector<std::string>& lines) {
  if (a.text != b.text)
    lines.push_back("~ " + SimpleClassName(b.class_name) + "(" + b.resource_id + ") \"" +
                    a.text + "\" -> \"" + b.text + "\"");
  const auto pairs = AlignChildren(a, b);
  std::vector<bool> used_a(a.children.size()), used_b(b.children.size());
  for (auto [i, j] : pairs) {
    used_a[i] = true;
    used_b[j] = true;
  }
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!used_a[i]) SubtreeLines('-', a.children[i], true, lines);
  for (auto [i, j] : pairs) Diff(a.children[i], b.children[j], lines);
  for (size_t j = 0; j < b.children.size(); ++j)
    if (!used_b[j]) SubtreeLines('+', b.children[j], true, lines);
}

// Appends the unmatched parts of `cur` into `canon`; fills cur -> canon paths
// and collects the canonical paths of appended operable nodes.
void Patch(UiNode& canon, NodePath& pc, const UiNode& cur, NodePath& pu,
           std::map<NodePath, NodePath>& cur_to_canon, std::vector<NodePath>& added);

void AdoptSubtree(const UiNode& cur, NodePath& pc, NodePath& pu,
                  std::map<NodePath, NodePath>& cur_to_canon,
                  std::vector<NodePath>& added) {
  cur_to_canon[pu] = pc;
  if (cur.operable()) added.push_back(pc);
  for (size_t i = 0; i < cur.children.size(); ++i) {
    pc.push_back(static_cast<int>(i));
    pu.push_back(static_cast<int>(i));
    AdoptSubtree(cur.children[i], pc, pu, cur_to_canon, added);
    pc.pop_back();
    pu.pop_back();
  }
}

void Patch(UiNode& canon, NodePath& pc, const UiNode& cur, NodePath& pu,
           std::map<NodePath, NodePath>& cur_to_canon, std::vector<NodePath>& added) {
  cur_to_canon[pu] = pc;
  const auto pairs = AlignChildren(canon, cur);
  std::vector<bool> used(cur.children.size());
  for (auto [i, j] : pairs) {
    used[j] = true;
    pc.push_back(i);
    pu.push_back(j);
    Patch(canon.children[i], pc, cur.children[j], pu, cur_to_canon, added);
    pc.pop_back();
    pu.pop_back();
  }
  for (size_t j = 0; j < cur.children.size(); ++j) {
    if (used[j]) continue;
    canon.children.push_back(cur.children[j]);
    pc.push_back(static_cast<int>(canon.children.size()) - 1);
    pu.push_back(static_cast<int>(j));
    AdoptSubtree(cur.children[j], pc, pu, cur_to_canon, added);
    pc.pop_back();
    pu.pop_back();
  }
}

std::string Describe(const MapLearnOptions& opt, const UiNode& node, const UiNode& screen) {
  std::string d = Trim(opt.describer->DescribeComponent(node, screen));
  return d.empty() ? SimpleClassName(node.class_name) : d;
}

struct PageVisit {
  std::string page_id;
  std::map<NodePath, NodePath> cur_to_canon;
};

PageVisit EnsurePage(AppMap& map, const UiNode& tree, const MapLearnOptions& opt,
                     MapLearnStats& stats) {
  PageVisit visit;
  if (const Page* match = MatchPage(map, tree, opt.metric, opt.threshold)) {
    Page page = *match;
    NodePath pc, pu;
    std::vector<NodePath> added;
    Patch(page.canonical_tree, pc, tree, pu, visit.cur_to_canon, added);
    for (const auto& [cur_path, canon_path] : visit.cur_to_canon) {
      const UiNode* node = tree.Find(cur_path);
      if (!node->operable() || page.Component(canon_path)) continue;
      page.components.push_back({canon_path, Describe(opt, *node, tree), {}});
      ++stats.components_added;
    }
    if (!added.empty()) {
      AssignDrawOrder(page.canonical_tree);
      ++stats.pages_patched;
    }
    visit.page_id = page.page_id;
    *map.FindPage(page.page_id) = std::move(page);
    return visit;
  }
  Page page;
  page.page_id = PageIdFor(map.app, tree);
  page.canonical_tree = tree;
  VisitPreorder(tree, [&](const UiNode& n, const NodePath& p) {
    visit.cur_to_canon[p] = p;
    if (n.operable()) page.components.push_back({p, Describe(opt, n, tree), {}});
  });
  stats.components_added += static_cast<int>(page.components.size());
  ++stats.pages_created;
  visit.page_id = page.page_id;
  if (!map.FindPage(page.page_id)) map.pages.push_back(std::move(page));
  return visit;
}

std::optional<Point> LastPoint(const ActionDecision& d) {
  std::optional<Point> p;
  for (const auto& a : d.sequence())
    if (auto q = ActionPoint(a)) p = q;
  return p;
}

std::string LastPointKind(const ActionDecision& d) {
  std::string kind;
  for (const auto& a : d.sequence())
    if (ActionPoint(a)) kind = ActionKind(a);
  return kind;
}

std::string LastPointDescription(const ActionDecision& d) {
  std::string text;
  for (const auto& a : d.sequence())
    if (ActionPoint(a)) text = mobagent::Describe(a);
  return text;
}

void Localize(const UiNode& n, Point p, NodePath& path, int depth, int& best_depth,
              int& best_order, std::optional<NodePath>& best) {
  if (!n.bounds.Contains(p)) return;
  if (depth > best_depth || (depth == best_depth && n.draw_order > best_order)) {
    best = path;
    best_depth = depth;
    best_order = n.draw_order;
  }
  for (size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    Localize(n.children[i], p, path, depth + 1, best_depth, best_order, best);
    path.pop_back();
  }
}

}  // namespace

std::string TextDescriber::DescribeComponent(const UiNode& node, const UiNode&) const {
  const std::string cls = SimpleClassName(node.class_name);
  if (!node.text.empty()) return cls + " \"" + node.text + "\"";
  std::vector<std::string> texts;
  VisitPreorder(node, [&](const UiNode& n, const NodePath&) {
    if (!n.text.empty() && texts.size() < 3) texts.push_back("\"" + n.text + "\"");
  });
  if (!texts.empty()) return cls + " " + Join(texts, " ");
  if (!node.resource_id.empty()) {
    const size_t slash = node.resource_id.rfind('/');
    return cls + " " + ReplaceAll(slash == std::string::npos
                                      ? node.resource_id
                                      : node.resource_id.substr(slash + 1),
                                  "_", " ");
  }
  return cls;
}

std::string DiffEffectSummarizer::SummarizeEffect(const std::string&,
                                                  const std::string& diff) const {
  std::vector<std::string> shown, changed;
  int added = 0, removed = 0;
  for (const auto& line : Split(diff, '\n')) {
    if (line.empty()) continue;
    const size_t q = line.find('"');
    if (line[0] == '+') {
      ++added;
      if (q != std::string::npos && shown.size() < 3) shown.push_back(line.substr(q));
    } else if (line[0] == '-') {
      ++removed;
    } else if (line[0] == '~' && q != std::string::npos && changed.empty()) {
      changed.push_back(line.substr(q));
    }
  }
  if (!shown.empty()) return "shows " + Join(shown, ", ");
  if (!changed.empty()) return "changes " + changed.front();
  return "adds " + std::to_string(added) + " and removes " + std::to_string(removed) +
         " elements";
}

AppMap LearnAppMap(const std::vector<ActionTransition>& actions, AppMap map,
                   const MapLearnOptions& options, MapLearnStats* stats_out) {
  MapLearnStats stats;
  for (const auto& act : actions) {
    if (!act.prev || !act.next) continue;
    std::optional<PageVisit> prev, next;
    // Each page commits on its own; a failure leaves that page as it was.
    try {
      prev = EnsurePage(map, act.prev->tree, options, stats);
    } catch (const std::exception&) {
      ++stats.failures;
    }
    try {
      next = EnsurePage(map, act.next->tree, options, stats);
    } catch (const std::exception&) {
      ++stats.failures;
    }
    const std::optional<Point> point = LastPoint(act.decision);
    if (!prev || !point) continue;
    const std::optional<NodePath> cur_path = LocalizeNode(act.prev->tree, *point);
    if (!cur_path) continue;
    auto canon = prev->cur_to_canon.find(*cur_path);
    if (canon == prev->cur_to_canon.end()) continue;
    try {
      Page page = *map.FindPage(prev->page_id);
      ComponentKnowledge* comp = page.Component(canon->second);
      if (!comp) {
        page.components.push_back(
            {canon->second,
             Describe(options, *act.prev->tree.Find(*cur_path), act.prev->tree),
             {}});
        ++stats.components_added;
        comp = &page.components.back();
      }
      const std::string diff = TreeDiff(act.prev->tree, act.next->tree);
      Trigger trigger;
      trigger.action_kind = LastPointKind(act.decision);
      trigger.effect_summary =
          diff.empty() ? kNoVisibleChange
                       : Trim(options.effects->SummarizeEffect(
                             LastPointDescription(act.decision), diff));
      if (trigger.effect_summary.empty()) trigger.effect_summary = kNoVisibleChange;
      if (next) trigger.destination_page_id = next->page_id;
      if (std::find(comp->triggers.begin(), comp->triggers.end(), trigger) ==
          comp->triggers.end()) {
        comp->triggers.push_back(std::move(trigger));
        ++stats.triggers_added;
      }
      *map.FindPage(prev->page_id) = std::move(page);
    } catch (const std::exception&) {
      ++stats.failures;
    }
  }
  if (stats_out) *stats_out = stats;
  return map;
}

std::optional<NodePath> LocalizeNode(const UiNode& tree, Point p) {
  std::optional<NodePath> best;
  NodePath path;
  int best_depth = -1, best_order = -1;
  Localize(tree, p, path, 0, best_depth, best_order, best);
  return best;
}

std::map<NodePath, NodePath> AlignTrees(const UiNode& canonical, const UiNode& current) {
  std::map<NodePath, NodePath> out;
  NodePath pa, pb;
  Align(canonical, pa, current, pb, out);
  return out;
}

std::string TreeDiff(const UiNode& before, const UiNode& after) {
  std::vector<std::string> lines;
  Diff(before, after, lines);
  if (lines.empty()) return "";
  return Join(lines, "\n") + "\n";
}

std::string KnowledgeText(const ComponentKnowledge& c) {
  std::vector<std::string> parts{c.description};
  for (const auto& t : c.triggers) parts.push_back("on " + t.action_kind + ": " + t.effect_summary);
  return Join(parts, "; ");
}

std::map<NodePath, std::string> KnowledgeFor(const Page& page, const UiNode& current) {
  std::map<NodePath, std::string> out;
  const auto aligned = AlignTrees(page.canonical_tree, current);
  for (const auto& c : page.components) {
    auto it = aligned.find(c.node_path);
    if (it != aligned.end()) out[it->second] = KnowledgeText(c);
  }
  return out;
}

std::string PageIdFor(const std::string& app, const UiNode& tree) {
  return ContentId("p-", Json{{"app", app}, {"tree", tree}});
}

std::filesystem::path AppMapPath(const std::filesystem::path& knowledge_dir,
                                 const std::string& app) {
  return knowledge_dir / "maps" / (app + ".map");
}

AppMap LoadAppMap(const std::filesystem::path& knowledge_dir, const std::string& app) {
  const auto path = AppMapPath(knowledge_dir, app);
  if (!std::filesystem::exists(path)) return AppMap{app, {}};
  return ReadJsonFile(path).get<AppMap>();
}

void SaveAppMap(const std::filesystem::path& knowledge_dir, const AppMap& map) {
  WriteJsonFile(AppMapPath(knowledge_dir, map.app), map);
}

}  // namespace mobagent
