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

#include "mobagent/perception/tree.h"

#include <expat.h>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <regex>
#include <sstream>

#include "mobagent/core/errors.h"

namespace mobagent {

namespace {

struct ParseState {
  XML_Parser parser = nullptr;
  std::vector<UiNode> top;    // completed top-level nodes
  std::vector<UiNode> stack;  // open nodes
  int depth = 0;              // element depth including the wrapper
  bool wrapper = false;
  std::optional<ParseError> error;
};

bool IsTrue(const char* v) { return std::string(v) == "true"; }

void XMLCALL OnStart(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* st = static_cast<ParseState*>(data);
  if (st->error) return;
  const std::string element(name);
  ++st->depth;
  if (st->depth == 1 && element == "hierarchy") {
    st->wrapper = true;
    return;
  }
  const std::size_t offset =
      static_cast<std::size_t>(XML_GetCurrentByteIndex(st->parser));
  UiNode node;
  if (element != "node") node.class_name = element;
  std::optional<std::string> bounds;
  for (int i = 0; attrs[i]; i += 2) {
    const std::string key(attrs[i]);
    const char* value = attrs[i + 1];
    if (key == "class") {
      node.class_name = value;
    } else if (key == "resource-id") {
      node.resource_id = value;
    } else if (key == "text") {
      node.text = value;
    } else if (key == "bounds") {
      bounds = value;
    } else if (key == "clickable") {
      node.clickable = IsTrue(value);
    } else if (key == "scrollable") {
      node.scrollable = IsTrue(value);
    }
  }
  const std::string label =
      (node.class_name.empty() ? element : node.class_name) +
      (node.resource_id.empty() ? "" : "(" + node.resource_id + ")");
  if (!bounds) {
    st->error = ParseError("node " + label + " has no bounds", offset);
    XML_StopParser(st->parser, XML_FALSE);
    return;
  }
  try {
    node.bounds = ParseBounds(*bounds, label, offset);
  } catch (const ParseError& e) {
    st->error = e;
    XML_StopParser(st->parser, XML_FALSE);
    return;
  }
  st->stack.push_back(std::move(node));
}

void XMLCALL OnEnd(void* data, const XML_Char*) {
  auto* st = static_cast<ParseState*>(data);
  if (st->error) return;
  --st->depth;
  if (st->wrapper && st->depth == 0) return;
  UiNode done = std::move(st->stack.back());
  st->stack.pop_back();
  if (st->stack.empty())
    st->top.push_back(std::move(done));
  else
    st->stack.back().children.push_back(std::move(done));
}

void Preorder(const UiNode& n, NodePath& path,
              const std::function<void(const UiNode&, const NodePath&)>& fn) {
  fn(n, path);
  for (size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    Preorder(n.children[i], path, fn);
    path.pop_back();
  }
}

void Renumber(UiNode& n, int& next) {
  n.draw_order = next++;
  for (auto& c : n.children) Renumber(c, next);
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void Serialize(const UiNode& n, int depth, std::ostringstream& os) {
  os << std::string(depth * 2, ' ') << "<node class=\"" << Escape(n.class_name)
     << "\" resource-id=\"" << Escape(n.resource_id) << "\" text=\""
     << Escape(n.text) << "\" bounds=\"" << n.bounds.ToString()
     << "\" clickable=\"" << (n.clickable ? "true" : "false")
     << "\" scrollable=\"" << (n.scrollable ? "true" : "false") << "\"";
  if (n.children.empty()) {
    os << "/>\n";
    return;
  }
  os << ">\n";
  for (const auto& c : n.children) Serialize(c, depth + 1, os);
  os << std::string(depth * 2, ' ') << "</node>\n";
}

}  // namespace

Rect ParseBounds(const std::string& s, const std::string& node_label,
                 std::size_t byte_offset) {
  static const std::regex kBounds(
      R"(\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, kBounds))
    throw ParseError("node " + node_label + " has malformed bounds '" + s + "'",
                     byte_offset);
  Rect r{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4])};
  if (!r.well_formed())
    throw ParseError("node " + node_label + " has inverted bounds '" + s + "'",
                     byte_offset);
  return r;
}

UiNode ParseTree(const std::string& raw_xml) {
  ParseState st;
  XML_Parser parser = XML_ParserCreate("UTF-8");
  st.parser = parser;
  XML_SetUserData(parser, &st);
  XML_SetElementHandler(parser, OnStart, OnEnd);
  const XML_Status status =
      XML_Parse(parser, raw_xml.data(), static_cast<int>(raw_xml.size()), XML_TRUE);
  std::optional<ParseError> failure = st.error;
  if (!failure && status != XML_STATUS_OK) {
    failure = ParseError(
        std::string("malformed tree markup: ") + XML_ErrorString(XML_GetErrorCode(parser)),
        static_cast<std::size_t>(XML_GetCurrentByteIndex(parser)));
  }
  XML_ParserFree(parser);
  if (failure) throw *failure;
  if (st.top.empty()) throw ParseError("tree markup contains no nodes", raw_xml.size());

  UiNode root;
  if (st.top.size() == 1) {
    root = std::move(st.top.front());
  } else {
    root.class_name = "hierarchy";
    root.bounds = st.top.front().bounds;
    for (const auto& n : st.top) {
      root.bounds.left = std::min(root.bounds.left, n.bounds.left);
      root.bounds.top = std::min(root.bounds.top, n.bounds.top);
      root.bounds.right = std::max(root.bounds.right, n.bounds.right);
      root.bounds.bottom = std::max(root.bounds.bottom, n.bounds.bottom);
    }
    root.children = std::move(st.top);
  }
  AssignDrawOrder(root);
  return root;
}

std::string SerializeTree(const UiNode& root) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<hierarchy>\n";
  Serialize(root, 1, os);
  os << "</hierarchy>\n";
  return os.str();
}

void AssignDrawOrder(UiNode& root) {
  int next = 0;
  Renumber(root, next);
}

void VisitPreorder(const UiNode& root,
                   const std::function<void(const UiNode&, const NodePath&)>& fn) {
  NodePath path;
  Preorder(root, path, fn);
}

std::vector<NodePath> FindOperableNodes(const UiNode& tree) {
  std::vector<NodePath> out;
  VisitPreorder(tree, [&](const UiNode& n, const NodePath& p) {
    if (n.operable()) out.push_back(p);
  });
  return out;
}

}  // namespace mobagent
