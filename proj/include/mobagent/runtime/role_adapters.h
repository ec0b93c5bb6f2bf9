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


// Perception and map-learning helpers answered by model roles: captioner
// ({"caption": str}) and summarizer ({"summary": str}). Failures propagate
// so callers can degrade or roll back.

#ifndef MOBAGENT_RUNTIME_ROLE_ADAPTERS_H_
#define MOBAGENT_RUNTIME_ROLE_ADAPTERS_H_

#include <string>
#include <vector>

#include "mobagent/learning/app_map.h"
#include "mobagent/perception/providers.h"
#include "mobagent/runtime/provider.h"

namespace mobagent {

// One line per node: class(resource-id) "text" @bounds.
std::string DescribeNodeForPrompt(const UiNode& node);

class RoleCaptioner : public CaptionProvider {
 public:
  explicit RoleCaptioner(ModelProvider* provider) : provider_(provider) {}
  std::string Caption(const Screenshot& shot, const UiNode& node) const override;

 private:
  ModelProvider* provider_;
};

class RoleSummarizer : public SummarizerProvider {
 public:
  explicit RoleSummarizer(ModelProvider* provider) : provider_(provider) {}
  std::string Summarize(const std::vector<SummaryItem>& items) const override;

 private:
  ModelProvider* provider_;
};

class RoleDescriber : public ComponentDescriber {
 public:
  explicit RoleDescriber(ModelProvider* provider) : provider_(provider) {}
  std::string DescribeComponent(const UiNode& node, const UiNode& screen) const override;

 private:
  ModelProvider* provider_;
};

class RoleEffectSummarizer : public EffectSummarizer {
 public:
  explicit RoleEffectSummarizer(ModelProvider* provider) : provider_(provider) {}
  std::string SummarizeEffect(const std::string& action, const std::string& diff) const override;

 private:
  ModelProvider* provider_;
};

}  // namespace mobagent

#endif  // MOBAGENT_RUNTIME_ROLE_ADAPTERS_H_
