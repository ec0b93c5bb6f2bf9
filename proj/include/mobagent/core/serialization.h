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

// JSON persistence for every domain type. Field names match the type
// definitions; objects are emitted with sorted keys so dumps are canonical.

#ifndef MOBAGENT_CORE_SERIALIZATION_H_
#define MOBAGENT_CORE_SERIALIZATION_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "mobagent/core/types.h"

namespace mobagent {

using Json = nlohmann::json;

void to_json(Json& j, const Point& v);
void from_json(const Json& j, Point& v);
void to_json(Json& j, const Rect& v);
void from_json(const Json& j, Rect& v);
void to_json(Json& j, const AppMetadata& v);
void from_json(const Json& j, AppMetadata& v);
void to_json(Json& j, const SubTask& v);
void from_json(const Json& j, SubTask& v);
void to_json(Json& j, const GlobalPlanItem& v);
void from_json(const Json& j, GlobalPlanItem& v);
void to_json(Json& j, const GlobalPlan& v);
void from_json(const Json& j, GlobalPlan& v);
void to_json(Json& j, const PlanItem& v);
void from_json(const Json& j, PlanItem& v);
void to_json(Json& j, const Plan& v);
void from_json(const Json& j, Plan& v);
void to_json(Json& j, const Reflection& v);
Reflection ReflectionFromJson(const Json& j);
void to_json(Json& j, const AtomicAction& v);
AtomicAction ActionFromJson(const Json& j);
void to_json(Json& j, const ActionDecision& v);
ActionDecision DecisionFromJson(const Json& j);
void to_json(Json& j, const UiNode& v);
void from_json(const Json& j, UiNode& v);
void to_json(Json& j, const MarkEntry& v);
void from_json(const Json& j, MarkEntry& v);
void to_json(Json& j, const Screenshot& v);
void from_json(const Json& j, Screenshot& v);
void to_json(Json& j, const ScreenPerception& v);
void from_json(const Json& j, ScreenPerception& v);
void to_json(Json& j, const InteractionRequest& v);
void from_json(const Json& j, InteractionRequest& v);
void to_json(Json& j, const DialogTurn& v);
void from_json(const Json& j, DialogTurn& v);
void to_json(Json& j, const DialogOutcome& v);
DialogOutcome DialogOutcomeFromJson(const Json& j);
void to_json(Json& j, const KeyContext& v);
void from_json(const Json& j, KeyContext& v);
void to_json(Json& j, const ActionOutcome& v);
void from_json(const Json& j, ActionOutcome& v);
void to_json(Json& j, const InteractionRecord& v);
void from_json(const Json& j, InteractionRecord& v);
// Screens are written once into a "screens" table keyed by perception id and
// referenced by id from each round, so shared screens stay shared on load.
void to_json(Json& j, const FullExecutionRecord& v);
void from_json(const Json& j, FullExecutionRecord& v);
void to_json(Json& j, const TraceStep& v);
void from_json(const Json& j, TraceStep& v);
void to_json(Json& j, const TraceSummary& v);
void from_json(const Json& j, TraceSummary& v);
void to_json(Json& j, const Trick& v);
void from_json(const Json& j, Trick& v);
void to_json(Json& j, const Trigger& v);
void from_json(const Json& j, Trigger& v);
void to_json(Json& j, const ComponentKnowledge& v);
void from_json(const Json& j, ComponentKnowledge& v);
void to_json(Json& j, const Page& v);
void from_json(const Json& j, Page& v);
void to_json(Json& j, const AppMap& v);
void from_json(const Json& j, AppMap& v);

// 64-bit FNV-1a; stable across platforms and runs.
std::uint64_t Fnv1a64(const std::string& bytes);
std::string Hex64(std::uint64_t v);
// prefix + hex digest of the canonical dump of `value`.
std::string ContentId(const std::string& prefix, const Json& value);
// Perception identity over screenshot handle, tree, marks and text.
std::string ComputePerceptionId(const ScreenPerception& p);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& contents);
Json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const Json& value);

}  // namespace mobagent

#endif  // MOBAGENT_CORE_SERIALIZATION_H_
