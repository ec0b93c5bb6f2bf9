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


#include "mobagent/eval/driver.h"

#include <set>

#include "mobagent/core/errors.h"
#include "mobagent/core/strings.h"
#include "mobagent/runtime/responses.h"

namespace mobagent {

nlohmann::json TranscriptToJson(const Transcript& t) {
  nlohmann::json turns = nlohmann::json::array();
  for (const auto& x : t.turns)
    turns.push_back({{"prompt_id", x.prompt_id},
                     {"prompt", x.prompt},
                     {"options", x.options},
                     {"reply", x.reply},
                     {"requirement", x.requirement}});
  return {{"task_id", t.task_id}, {"mode", t.mode}, {"instruction", t.instruction},
          {"turns", turns}};
}

std::string TaskDriver::Instruction(DriveMode mode) {
  std::lock_guard<std::mutex> lock(mu_);
  if (mode == DriveMode::kVague && !spec_.vague_instruction)
    throw TaskSpecError("task " + spec_.id + " has no vague_instruction");
  transcript_.task_id = spec_.id;
  transcript_.mode = DriveModeName(mode);
  transcript_.instruction =
      mode == DriveMode::kVague ? *spec_.vague_instruction : spec_.clear_instruction;
  return transcript_.instruction;
}

std::string TaskDriver::Ask(const InteractionPrompt& prompt) {
  std::lock_guard<std::mutex> lock(mu_);
  if (revealed_.size() != spec_.requirements.size())
    revealed_.assign(spec_.requirements.size(), false);
  auto [reply, index] = Answer(prompt);
  if (index >= 0) revealed_[index] = true;
  transcript_.turns.push_back({prompt.prompt_id, prompt.text, prompt.options, reply, index});
  return reply;
}

Transcript TaskDriver::transcript() const {
  std::lock_guard<std::mutex> lock(mu_);
  return transcript_;
}

std::pair<std::string, int> ScriptedDriver::Answer(const InteractionPrompt& prompt) {
  std::set<std::string> asked;
  for (const auto& w : Tokenize(prompt.text)) asked.insert(w);
  for (const auto& o : prompt.options)
    for (const auto& w : Tokenize(o)) asked.insert(w);
  int best = -1, best_score = 0;
  bool best_revealed = true;
  for (size_t i = 0; i < spec_.requirements.size(); ++i) {
    const SpecItem& r = spec_.requirements[i];
    std::set<std::string> words;
    for (const auto& w : Tokenize(r.text)) words.insert(w);
    for (const auto& k : r.keywords)
      for (const auto& w : Tokenize(k)) words.insert(w);
    int score = 0;
    for (const auto& w : words) score += asked.count(w);
    if (score == 0) continue;
    const bool rev = revealed_[i];
    // Unrevealed beats revealed; then more shared words; then list order.
    if (best < 0 || (best_revealed && !rev) || (rev == best_revealed && score > best_score)) {
      best = static_cast<int>(i);
      best_score = score;
      best_revealed = rev;
    }
  }
  if (best < 0) return {kNoPreference, -1};
  return {spec_.requirements[best].text, best};
}

std::pair<std::string, int> ModelDriver::Answer(const InteractionPrompt& prompt) {
  std::string reqs;
  for (const auto& r : spec_.requirements) reqs += "- " + r.text + "\n";
  RoleRequest req(Role::kTaskDriver);
  req.Set("requirements", reqs).Set("question", prompt.text);
  if (!prompt.options.empty()) req.Set("item", Join(prompt.options, "\n"));
  const std::string reply = Complete<std::string>(*provider_, req, [](const nlohmann::json& j) {
                              return Trim(ParseStringField(j, "reply"));
                            }).parsed;
  for (size_t i = 0; i < spec_.requirements.size(); ++i)
    if (ContainsIgnoreCase(spec_.requirements[i].text, reply) && !reply.empty())
      return {reply, static_cast<int>(i)};
  return {reply, -1};
}

bool ClosedWorld(const Transcript& t, const TaskSpec& spec) {
  for (const auto& turn : t.turns) {
    if (turn.reply == kNoPreference) continue;
    bool found = false;
    for (const auto& r : spec.requirements)
      if (ContainsIgnoreCase(r.text, turn.reply)) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace mobagent
