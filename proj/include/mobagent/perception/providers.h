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

// Pixel-level helpers used by non-visual compression. Real implementations
// crop the screenshot; the simulated ones read what the screen would show
// from the tree itself, which is what a fixture device renders.

#ifndef MOBAGENT_PERCEPTION_PROVIDERS_H_
#define MOBAGENT_PERCEPTION_PROVIDERS_H_

#include <map>
#include <string>
#include <vector>

#include "mobagent/core/types.h"

namespace mobagent {

class OcrProvider {
 public:
  virtual ~OcrProvider() = default;
  // Text visible inside `region` of the screen.
  virtual std::string Recognize(const Screenshot& shot, const UiNode& screen,
                                const Rect& region) const = 0;
};

class CaptionProvider {
 public:
  virtual ~CaptionProvider() = default;
  virtual std::string Caption(const Screenshot& shot, const UiNode& node) const = 0;
};

struct SummaryItem {
  std::string class_name;
  std::string text;
  std::string description;
};

class SummarizerProvider {
 public:
  virtual ~SummarizerProvider() = default;
  virtual std::string Summarize(const std::vector<SummaryItem>& items) const = 0;
};

// Text of the topmost text-bearing node whose bounds contain the region.
class SimulatedOcr : public OcrProvider {
 public:
  std::string Recognize(const Screenshot& shot, const UiNode& screen,
                        const Rect& region) const override;
};

// Fixed answers keyed by "[l,t][r,b]"; other regions fall back to SimulatedOcr.
class ScriptedOcr : public OcrProvider {
 public:
  explicit ScriptedOcr(std::map<std::string, std::string> table)
      : table_(std::move(table)) {}
  std::string Recognize(const Screenshot& shot, const UiNode& screen,
                        const Rect& region) const override;

 private:
  std::map<std::string, std::string> table_;
  SimulatedOcr fallback_;
};

// Captions keyed by resource-id; unknown images read "icon <id suffix>".
class ScriptedCaptioner : public CaptionProvider {
 public:
  ScriptedCaptioner() = default;
  explicit ScriptedCaptioner(std::map<std::string, std::string> table)
      : table_(std::move(table)) {}
  std::string Caption(const Screenshot& shot, const UiNode& node) const override;

 private:
  std::map<std::string, std::string> table_;
};

// Joins the non-empty texts and descriptions with ", ".
class ConcatSummarizer : public SummarizerProvider {
 public:
  std::string Summarize(const std::vector<SummaryItem>& items) const override;
};

}  // namespace mobagent

#endif  // MOBAGENT_PERCEPTION_PROVIDERS_H_
