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


// Operator entry points: run, eval, inspect, serve.
//
// Exit codes: 0 ok, 2 configuration error (bad flag or key, missing
// cassette, empty suite, bind failure), 3 task abort or hard error,
// 4 artifact not found.

#ifndef MOBAGENT_CLI_COMMANDS_H_
#define MOBAGENT_CLI_COMMANDS_H_

#include <functional>
#include <iosfwd>
#include <string>

#include "mobagent/cli/config.h"
#include "mobagent/session/session.h"

namespace mobagent {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAbort = 3;
inline constexpr int kExitNotFound = 4;

// Session settings implied by the CLI settings.
SessionConfig SessionConfigFrom(const CliSettings& s);

// Deterministic renderings used by `inspect`. Throw NotFound.
std::string InspectMap(const std::filesystem::path& knowledge_dir, const std::string& app);
std::string InspectTricks(const std::filesystem::path& knowledge_dir, const std::string& app);
std::string InspectTrace(const std::filesystem::path& path);

// `getenv_fn` defaults to std::getenv. `serve` stops on SIGINT/SIGTERM.
int RunCli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
           std::ostream& err,
           std::function<const char*(const char*)> getenv_fn = nullptr);

}  // namespace mobagent

#endif  // MOBAGENT_CLI_COMMANDS_H_
