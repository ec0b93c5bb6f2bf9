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


#include "mobagent/interaction/interaction_loop.h"

#include <sstream>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/executor/plan_rules.h"
#include "mobagent/runtime/responses.h"

namespace mobagent {

std::string RenderDialog(const std::vector<DialogTurn>& turns) {
  std::ostringstream os;
  int k = 1;
  for (const auto& t : turns) {
    os << k << ". agent: " << t.prompt << "\n";
    if (t.reply) os << k << ". user: " << *t.reply << "\n";
    ++k;
  }
  return os.str();
}

std::string RenderInteractionRequest(const InteractionRequest& r) {
  return "type " + std::to_string(r.interaction_type) + ": " + r.rationale;
}

InteractionResult RunInteraction(ModelProvider& provider, DialogChannel& channel,
                                 EventLog* events, const InteractionOptions& options,
                                 const InteractionInput& input) {
  InteractionResult result{{}, input.instruction, input.plan};
  InteractionRequest request = input.request;
  int prompts = 0;
  auto emit = [&](const std::string& type, const Json& data) {
    if (events) events->Append(type, data);
  };
  while (request.needed()) {
    InteractionRecord rec;
    rec.action_round = input.round;
    rec.request = request;
    emit("interaction_start", {{"round", input.round}, {"request", request}});
    for (;;) {
      RoleRequest req(Role::kUserInteractor);
      req.Set("instruction", result.instruction)
          .Set("plan", RenderPlan(result.plan))
          .Set("interaction", RenderInteractionRequest(request))
          .Set("screen", input.screen)
          .Set("dialog_history", RenderDialog(rec.turns));
      if (!input.context.empty()) req.Set("context", input.context);
      const auto step = Complete<InteractorResponse>(provider, req, ParseInteractor).parsed;
      if (step.status == 1) {
        rec.outcome = DialogOutcome(1, *step.summary);
        break;
      }
      if (prompts >= options.turn_cap)
        throw InteractionCapExceeded("more than " + std::to_string(options.turn_cap) +
                                     " prompts in round " + std::to_string(input.round));
      ++prompts;
      InteractionPrompt prompt{"r" + std::to_string(input.round) + "-k" + std::to_string(prompts),
                               request.interaction_type, step.prompt, step.options,
                               request.rationale};
      emit("interaction_prompt", PromptToJson(prompt));
      rec.turns.push_back({step.prompt, std::nullopt});
      const std::string reply = channel.Ask(prompt);
      rec.turns.back().reply = reply;
      emit("interaction_reply", {{"prompt_id", prompt.prompt_id}, {"reply", reply}});
    }
    const std::string summary = *rec.outcome->summary();
    result.instruction += kClarificationPrefix + summary;
    emit("interaction_resolved", {{"round", input.round}, {"summary", summary}});
    result.records.push_back(rec);

    RoleRequest req(options.standalone ? Role::kPlanner : Role::kReplanner);
    req.Set("instruction", result.instruction)
        .Set("plan", RenderPlan(result.plan))
        .Set("screen", input.screen)
        .Set("interaction", RenderInteractionRequest(request))
        .Set("dialog_summary", summary);
    if (!input.context.empty()) req.Set("context", input.context);
    const auto adjusted = Complete<ReplanResponse>(provider, req, [](const Json& j) {
                            return ParseReplan(j, false, false);
                          }).parsed;
    if (adjusted.plan) result.plan = ReplaceOpenItems(result.plan, *adjusted.plan);
    request = adjusted.interaction;
  }
  emit("interaction_end", {{"round", input.round}, {"instruction", result.instruction}});
  return result;
}

}  // namespace mobagent
