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


// Test-side user stand-in. It answers the agent's prompts from the task's
// requirement list only and never volunteers anything unasked.

#ifndef MOBAGENT_EVAL_DRIVER_H_
#define MOBAGENT_EVAL_DRIVER_H_

#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "mobagent/eval/task_spec.h"
#include "mobagent/interaction/channels.h"
#include "mobagent/runtime/provider.h"

namespace mobagent {

inline constexpr char kNoPreference[] = "no preference";

struct TranscriptTurn {
  std::string prompt_id;
  std::string prompt;
  std::vector<std::string> options;
  std::string reply;
  int requirement = -1;  // index answered from, -1 for a refusal
};

struct Transcript {
  std::string task_id;
  std::string mode;
  std::string instruction;
  std::vector<TranscriptTurn> turns;
};

nlohmann::json TranscriptToJson(const Transcript& t);

class TaskDriver : public DialogChannel {
 public:
  explicit TaskDriver(const TaskSpec& spec) : spec_(spec) {}
  std::string Ask(const InteractionPrompt& prompt) override;
  // The instruction the session is started with.
  std::string Instruction(DriveMode mode);
  Transcript transcript() const;

 protected:
  // Reply text and the requirement it came from (-1: refusal).
  virtual std::pair<std::string, int> Answer(const InteractionPrompt& prompt) = 0;

  const TaskSpec& spec_;
  std::vector<bool> revealed_;

 private:
  mutable std::mutex mu_;
  Transcript transcript_;
};

// Answers with the requirement text sharing the most words with the prompt
// and its options (keywords count too), preferring ones not yet revealed;
// "no preference" when nothing matches.
class ScriptedDriver : public TaskDriver {
 public:
  using TaskDriver::TaskDriver;

 protected:
  std::pair<std::string, int> Answer(const InteractionPrompt& prompt) override;
};

// Asks the task_driver role ({"reply": str}) with the requirement list.
class ModelDriver : public TaskDriver {
 public:
  ModelDriver(const TaskSpec& spec, ModelProvider* provider)
      : TaskDriver(spec), provider_(provider) {}

 protected:
  std::pair<std::string, int> Answer(const InteractionPrompt& prompt) override;

 private:
  ModelProvider* provider_;
};

// Whether every non-refusal reply is contained in some requirement text.
bool ClosedWorld(const Transcript& t, const TaskSpec& spec);

}  // namespace mobagent

#endif  // MOBAGENT_EVAL_DRIVER_H_
