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


#include "mobagent/interaction/channels.h"

#include <istream>
#include <ostream>

#include "mobagent/core/errors.h"
#include "mobagent/core/strings.h"

namespace mobagent {

nlohmann::json PromptToJson(const InteractionPrompt& p) {
  return {{"prompt_id", p.prompt_id},
          {"interaction_type", p.interaction_type},
          {"text", p.text},
          {"options", p.options},
          {"rationale", p.rationale}};
}

std::string ConsoleChannel::Ask(const InteractionPrompt& prompt) {
  out_ << "\n[agent] " << prompt.text << "\n";
  for (size_t i = 0; i < prompt.options.size(); ++i)
    out_ << "  " << (i + 1) << ") " << prompt.options[i] << "\n";
  out_ << "> " << std::flush;
  std::string line;
  if (!std::getline(in_, line)) throw InteractionTimeout("console input closed");
  line = Trim(line);
  // A bare option number picks that option.
  if (!line.empty() && line.find_first_not_of("0123456789") == std::string::npos) {
    const size_t n = std::stoul(line);
    if (n >= 1 && n <= prompt.options.size()) return prompt.options[n - 1];
  }
  return line;
}

std::string PromptBoard::Ask(const InteractionPrompt& prompt) {
  std::unique_lock<std::mutex> lock(mu_);
  if (cancelled_) throw InteractionTimeout("session cancelled");
  pending_ = prompt;
  reply_.reset();
  const bool got = cv_.wait_for(lock, timeout_, [&] { return reply_.has_value() || cancelled_; });
  pending_.reset();
  if (!got || !reply_) throw InteractionTimeout("no reply to prompt " + prompt.prompt_id);
  std::string r = std::move(*reply_);
  reply_.reset();
  return r;
}

std::optional<InteractionPrompt> PromptBoard::Pending() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (reply_) return std::nullopt;
  return pending_;
}

PromptBoard::ReplyStatus PromptBoard::Reply(const std::string& prompt_id,
                                            const std::string& text) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!pending_) return ReplyStatus::kNoPrompt;
  if (pending_->prompt_id != prompt_id || reply_) return ReplyStatus::kStale;
  reply_ = text;
  cv_.notify_all();
  return ReplyStatus::kAccepted;
}

void PromptBoard::Cancel() {
  std::lock_guard<std::mutex> lock(mu_);
  cancelled_ = true;
  cv_.notify_all();
}

}  // namespace mobagent
