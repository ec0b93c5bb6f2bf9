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

#include "mobagent/perception/set_of_marks.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "mobagent/core/errors.h"
#include "mobagent/perception/tree.h"

namespace mobagent {

namespace {

struct Flat {
  const UiNode* node;
  NodePath path;
  int subtree_end;  // one past the last preorder index of the subtree
};

int Flatten(const UiNode& n, NodePath& path, std::vector<Flat>& out) {
  const size_t self = out.size();
  out.push_back({&n, path, 0});
  for (size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    Flatten(n.children[i], path, out);
    path.pop_back();
  }
  out[self].subtree_end = static_cast<int>(out.size());
  return out[self].subtree_end;
}

bool Covered(Point p, const std::vector<Rect>& occluders) {
  for (const auto& r : occluders)
    if (r.Contains(p)) return true;
  return false;
}

// Closest point of `box` (to its midpoint) not inside any occluder.
std::optional<Point> FreePoint(const Rect& box, const std::vector<Rect>& occluders) {
  const Point mid = box.Center();
  if (!Covered(mid, occluders)) return mid;
  std::vector<int> xs{box.left, box.right}, ys{box.top, box.bottom};
  for (const auto& o : occluders) {
    for (int x : {o.left, o.right})
      if (x > box.left && x < box.right) xs.push_back(x);
    for (int y : {o.top, o.bottom})
      if (y > box.top && y < box.bottom) ys.push_back(y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::optional<Point> best;
  long long best_d = std::numeric_limits<long long>::max();
  for (size_t b = 0; b + 1 < ys.size(); ++b) {
    for (size_t a = 0; a + 1 < xs.size(); ++a) {
      // Every occluder edge is a grid line, so a cell is covered uniformly.
      if (Covered({xs[a], ys[b]}, occluders)) continue;
      Point p{std::clamp(mid.x, xs[a], xs[a + 1] - 1),
              std::clamp(mid.y, ys[b], ys[b + 1] - 1)};
      const long long dx = p.x - mid.x, dy = p.y - mid.y;
      const long long d = dx * dx + dy * dy;
      if (d < best_d || (d == best_d && (p.y < best->y || (p.y == best->y && p.x < best->x)))) {
        best = p;
        best_d = d;
      }
    }
  }
  return best;
}

const MarkEntry& Lookup(const std::vector<MarkEntry>& som, int mark) {
  for (const auto& e : som) {
    if (e.mark != mark) continue;
    if (!e.valid) throw InvalidMark(mark);
    return e;
  }
  throw UnknownMark(mark);
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

}  // namespace

std::vector<MarkEntry> BuildSetOfMarks(const UiNode& tree) {
  std::vector<Flat> flat;
  NodePath path;
  Flatten(tree, path, flat);

  std::vector<int> operable;  // preorder indices
  for (size_t i = 0; i < flat.size(); ++i)
    if (flat[i].node->operable()) operable.push_back(static_cast<int>(i));

  std::vector<MarkEntry> entries;
  for (size_t k = 0; k < operable.size(); ++k) {
    const Flat& f = flat[operable[k]];
    MarkEntry e;
    e.mark = static_cast<int>(k) + 1;
    e.kind = f.node->clickable || !f.node->scrollable ? MarkKind::kClickable
                                                      : MarkKind::kScrollable;
    e.bbox = f.node->bounds;
    e.node_path = f.path;
    e.center = e.bbox.Center();
    e.valid = !e.bbox.empty();
    // Overdraw: a later node outside this subtree containing the whole bbox.
    for (size_t j = f.subtree_end; e.valid && j < flat.size(); ++j)
      if (flat[j].node->bounds.Contains(e.bbox)) e.valid = false;
    entries.push_back(std::move(e));
  }

  // Click points, latest first, so occluders have their final validity.
  for (size_t k = entries.size(); k-- > 0;) {
    MarkEntry& e = entries[k];
    if (!e.valid) continue;
    std::vector<Rect> occluders;
    for (size_t j = k + 1; j < entries.size(); ++j)
      if (entries[j].valid) occluders.push_back(entries[j].bbox);
    std::optional<Point> p = FreePoint(e.bbox, occluders);
    if (p)
      e.center = *p;
    else
      e.valid = false;
  }
  return entries;
}

std::string RenderMarkedImage(const UiNode& tree, const std::vector<MarkEntry>& marks,
                              const Screenshot& screenshot) {
  const Rect& r = tree.bounds;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\""
     << " width=\"" << r.right << "\" height=\"" << r.bottom << "\">\n";
  if (!screenshot.path.empty())
    os << "  <image xlink:href=\"" << XmlEscape(screenshot.path) << "\" x=\"0\" y=\"0\""
       << " width=\"" << r.right << "\" height=\"" << r.bottom << "\"/>\n";
  for (const auto& e : marks) {
    if (!e.valid) continue;
    const char* color = e.kind == MarkKind::kClickable ? "#e53935" : "#1e88e5";
    os << "  <rect x=\"" << e.bbox.left << "\" y=\"" << e.bbox.top << "\" width=\""
       << e.bbox.width() << "\" height=\"" << e.bbox.height()
       << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
    os << "  <text x=\"" << e.bbox.left + 4 << "\" y=\"" << e.bbox.top + 28
       << "\" font-size=\"28\" fill=\"" << color << "\">" << e.mark << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

ActionDecision ResolveMarks(const ActionDecision& decision,
                            const std::vector<MarkEntry>& som) {
  std::vector<AtomicAction> out;
  for (const auto& a : decision.sequence()) {
    if (const auto* t = std::get_if<Tap>(&a); t && t->mark) {
      out.push_back(Tap{Lookup(som, *t->mark).center, std::nullopt});
    } else if (const auto* l = std::get_if<LongPress>(&a); l && l->mark) {
      out.push_back(LongPress{Lookup(som, *l->mark).center, l->duration, std::nullopt});
    } else if (const auto* s = std::get_if<Swipe>(&a); s && s->mark) {
      const Rect& b = Lookup(som, *s->mark).bbox;
      const int mx = (b.left + b.right) / 2, my = (b.top + b.bottom) / 2;
      const int q1x = b.left + b.width() / 4, q3x = b.left + 3 * b.width() / 4;
      const int q1y = b.top + b.height() / 4, q3y = b.top + 3 * b.height() / 4;
      Swipe r;
      r.duration = s->duration;
      if (s->direction == "down") {
        r.from = {mx, q1y};
        r.to = {mx, q3y};
      } else if (s->direction == "left") {
        r.from = {q3x, my};
        r.to = {q1x, my};
      } else if (s->direction == "right") {
        r.from = {q1x, my};
        r.to = {q3x, my};
      } else {
        r.from = {mx, q3y};
        r.to = {mx, q1y};
      }
      out.push_back(r);
    } else {
      out.push_back(a);
    }
  }
  return ActionDecision(std::move(out), decision.expected_result());
}

std::optional<MarkEntry> RelocateMark(const std::vector<MarkEntry>& som, Point p) {
  for (auto it = som.rbegin(); it != som.rend(); ++it)
    if (it->valid && it->bbox.Contains(p)) return *it;
  return std::nullopt;
}

}  // namespace mobagent
