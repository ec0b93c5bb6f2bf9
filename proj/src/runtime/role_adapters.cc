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


#include "mobagent/runtime/role_adapters.h"

#include "mobagent/core/strings.h"
#include "mobagent/perception/tree.h"
#include "mobagent/runtime/responses.h"

namespace mobagent {

namespace {

std::string Ask(ModelProvider* provider, RoleRequest req, const char* field) {
  auto resp = Complete<std::string>(*provider, std::move(req), [field](const nlohmann::json& j) {
    std::string s = Trim(ParseStringField(j, field));
    if (s.empty()) throw SchemaError(std::string("'") + field + "' must be non-empty");
    return s;
  });
  return resp.parsed;
}

}  // namespace

std::string DescribeNodeForPrompt(const UiNode& node) {
  std::string line = SimpleClassName(node.class_name) + "(" + node.resource_id + ")";
  if (!node.text.empty()) line += " \"" + node.text + "\"";
  return line + " @" + node.bounds.ToString();
}

std::string RoleCaptioner::Caption(const Screenshot& shot, const UiNode& node) const {
  RoleRequest req(Role::kCaptioner);
  req.Set("node", DescribeNodeForPrompt(node));
  if (!shot.handle.empty()) req.Set("screen", shot.handle);
  return Ask(provider_, std::move(req), "caption");
}

std::string RoleSummarizer::Summarize(const std::vector<SummaryItem>& items) const {
  std::vector<std::string> lines;
  for (const auto& i : items) {
    std::string line = SimpleClassName(i.class_name);
    if (!i.text.empty()) line += " \"" + i.text + "\"";
    if (!i.description.empty()) line += " (" + i.description + ")";
    lines.push_back(line);
  }
  RoleRequest req(Role::kSummarizer);
  req.Set("content", Join(lines, "\n"));
  return Ask(provider_, std::move(req), "summary");
}

std::string RoleDescriber::DescribeComponent(const UiNode& node, const UiNode& screen) const {
  std::vector<std::string> inner;
  VisitPreorder(node, [&](const UiNode& n, const NodePath&) {
    if (&n != &node && !n.text.empty()) inner.push_back(n.text);
  });
  RoleRequest req(Role::kSummarizer);
  req.Set("node", DescribeNodeForPrompt(node));
  req.Set("content", Join(inner, "\n"));
  req.Set("screen", DescribeNodeForPrompt(screen));
  return Ask(provider_, std::move(req), "summary");
}

std::string RoleEffectSummarizer::SummarizeEffect(const std::string& action,
                                                  const std::string& diff) const {
  RoleRequest req(Role::kSummarizer);
  req.Set("last_action", action);
  req.Set("diff", diff);
  return Ask(provider_, std::move(req), "summary");
}

}  // namespace mobagent
