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


// Dialog channels carry interaction prompts to a person (or a test driver)
// and bring back the reply.

#ifndef MOBAGENT_INTERACTION_CHANNELS_H_
#define MOBAGENT_INTERACTION_CHANNELS_H_

#include <chrono>
#include <condition_variable>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace mobagent {

struct InteractionPrompt {
  std::string prompt_id;
  int interaction_type = 0;
  std::string text;
  std::vector<std::string> options;
  std::string rationale;
};

nlohmann::json PromptToJson(const InteractionPrompt& p);

class DialogChannel {
 public:
  virtual ~DialogChannel() = default;
  // Blocks for the reply. Throws InteractionTimeout.
  virtual std::string Ask(const InteractionPrompt& prompt) = 0;
};

// Prints the prompt and reads one line; end of input counts as a timeout.
class ConsoleChannel : public DialogChannel {
 public:
  ConsoleChannel(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::string Ask(const InteractionPrompt& prompt) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

class FunctionChannel : public DialogChannel {
 public:
  using Fn = std::function<std::string(const InteractionPrompt&)>;
  explicit FunctionChannel(Fn fn) : fn_(std::move(fn)) {}
  std::string Ask(const InteractionPrompt& prompt) override { return fn_(prompt); }

 private:
  Fn fn_;
};

// Holds at most one pending prompt for the service endpoints. The first
// reply carrying the pending prompt's id wins; anything else is stale.
class PromptBoard : public DialogChannel {
 public:
  enum class ReplyStatus { kAccepted, kStale, kNoPrompt };

  explicit PromptBoard(std::chrono::milliseconds timeout) : timeout_(timeout) {}
  std::string Ask(const InteractionPrompt& prompt) override;

  std::optional<InteractionPrompt> Pending() const;
  ReplyStatus Reply(const std::string& prompt_id, const std::string& text);
  // Fails the pending and every later Ask with a timeout.
  void Cancel();

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::chrono::milliseconds timeout_;
  std::optional<InteractionPrompt> pending_;
  std::optional<std::string> reply_;
  bool cancelled_ = false;
};

}  // namespace mobagent

#endif  // MOBAGENT_INTERACTION_CHANNELS_H_
