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


// Interaction loop: the user_interactor role either writes the next prompt
// or declares the dialog resolved with a summary; a resolved dialog is
// folded into the task instruction and the plan is redone by the planner
// (replanner in hybrid mode). A new interaction request from the planner
// starts another dialog within the same action round.

#ifndef MOBAGENT_INTERACTION_INTERACTION_LOOP_H_
#define MOBAGENT_INTERACTION_INTERACTION_LOOP_H_

#include <string>
#include <vector>

#include "mobagent/core/types.h"
#include "mobagent/interaction/channels.h"
#include "mobagent/runtime/provider.h"
#include "mobagent/session/event_log.h"

namespace mobagent {

inline constexpr int kDefaultInteractionCap = 5;
inline constexpr char kClarificationPrefix[] = "\nUser clarification: ";

struct InteractionInput {
  int round = 0;
  std::string instruction;
  Plan plan;
  InteractionRequest request;
  std::string screen;
  std::string context;
};

struct InteractionResult {
  std::vector<InteractionRecord> records;
  std::string instruction;  // with the clarifications appended
  Plan plan;
};

struct InteractionOptions {
  int turn_cap = kDefaultInteractionCap;  // prompts per action round
  bool standalone = false;                // planner instead of replanner
};

std::string RenderDialog(const std::vector<DialogTurn>& turns);
std::string RenderInteractionRequest(const InteractionRequest& r);

// Throws InteractionTimeout, InteractionCapExceeded, MalformedResponse.
InteractionResult RunInteraction(ModelProvider& provider, DialogChannel& channel,
                                 EventLog* events, const InteractionOptions& options,
                                 const InteractionInput& input);

}  // namespace mobagent

#endif  // MOBAGENT_INTERACTION_INTERACTION_LOOP_H_
