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

#include "mobagent/perception/perceptor.h"

#include <set>
#include <sstream>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/learning/app_map.h"
#include "mobagent/perception/set_of_marks.h"
#include "mobagent/perception/tree.h"

namespace mobagent {

namespace {

std::string Label(const UiNode& n) {
  if (!n.text.empty()) return n.text;
  std::string found;
  VisitPreorder(n, [&](const UiNode& c, const NodePath&) {
    if (found.empty() && !c.text.empty()) found = c.text;
  });
  return found;
}

std::string Sanitize(const std::string& s) {
  return ReplaceAll(NormalizeWhitespace(s), "\"", "'");
}

}  // namespace

ScreenPerception ScreenPerceptor::Perceive(const RawScreen& raw, const AppMap* map) const {
  return PerceiveTree(ParseTree(raw.xml), raw.screenshot, map);
}

ScreenPerception ScreenPerceptor::PerceiveTree(const UiNode& tree, const Screenshot& shot,
                                               const AppMap* map) const {
  ScreenPerception p;
  p.screenshot = shot;
  p.tree = tree;
  p.mode = options_.mode;
  std::map<NodePath, std::string> knowledge;
  if (map) {
    if (const Page* page = MatchPage(*map, tree, options_.metric)) {
      p.page_id = page->page_id;
      knowledge = KnowledgeFor(*page, tree);
    }
  }
  if (options_.mode == PerceptionMode::kVisual) {
    p.set_of_marks = BuildSetOfMarks(tree);
    p.textual = VisualText(tree, p.set_of_marks, knowledge, shot);
  } else {
    try {
      p.textual = CompressTreeNonVisual(tree, shot, providers_, knowledge);
    } catch (const PerceptionDegraded& e) {
      p.textual = e.partial();
    }
  }
  p.id = ComputePerceptionId(p);
  return p;
}

std::string ScreenPerceptor::VisualText(const UiNode& tree,
                                        const std::vector<MarkEntry>& marks,
                                        const std::map<NodePath, std::string>& knowledge,
                                        const Screenshot& shot) const {
  std::ostringstream os;
  for (const auto& e : marks) {
    if (!e.valid) continue;
    const UiNode* n = tree.Find(e.node_path);
    os << "[" << e.mark << "] " << n->class_name << "(" << n->resource_id << ") \""
       << Sanitize(Label(*n)) << "\" @(" << e.center.x << "," << e.center.y << ")";
    if (e.kind == MarkKind::kScrollable) os << " scrollable " << e.bbox.ToString();
    os << "\n";
    auto it = knowledge.find(e.node_path);
    if (it != knowledge.end()) os << "    known: " << Sanitize(it->second) << "\n";
  }
  // The simulated screenshot has no pixels, so text a model would read off
  // it is listed here: every text not already shown as a mark label.
  std::set<std::string> shown;
  for (const auto& e : marks)
    if (e.valid) shown.insert(Label(*tree.Find(e.node_path)));
  VisitPreorder(tree, [&](const UiNode& n, const NodePath&) {
    if (n.text.empty() || n.operable() || shown.count(n.text) || n.bounds.empty()) return;
    const Point c = n.bounds.Center();
    os << "[-] \"" << Sanitize(n.text) << "\" @(" << c.x << "," << c.y << ")\n";
  });
  if (options_.recover_overlooked && providers_.captioner) {
    VisitPreorder(tree, [&](const UiNode& n, const NodePath&) {
      if (n.operable() || !n.children.empty() || !n.text.empty() || n.bounds.empty())
        return;
      if (SimpleClassName(n.class_name) != "View") return;
      const std::string caption = Trim(providers_.captioner->Caption(shot, n));
      if (caption.empty()) return;
      const Point c = n.bounds.Center();
      os << "[~] " << n.class_name << "(" << n.resource_id << ") \"" << Sanitize(caption)
         << "\" @(" << c.x << "," << c.y << ")\n";
    });
  }
  return os.str();
}

}  // namespace mobagent
