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


// Command-line settings. Every setting can come from a flag, a FAIRY_*
// environment variable or a JSON config file; flags beat the environment,
// which beats the file, which beats the default. The config file accepts
// the settings' own names and the evaluation configuration keys
// ("Reflection Policy", "Screen Perception Type", "Non-visual Execution
// Mode", "Interaction Mode", plus the model-name keys, which are recorded
// but have no effect on the offline providers).

#ifndef MOBAGENT_CLI_CONFIG_H_
#define MOBAGENT_CLI_CONFIG_H_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobagent/core/errors.h"

namespace mobagent {

class ConfigError : public Error {
 public:
  using Error::Error;
};

using SettingLayer = std::map<std::string, std::string>;

struct CliSettings {
  std::string provider = "scripted";  // scripted | replay | record
  std::string perception = "visual";  // visual | nonvisual
  std::string reflection = "hybrid";  // hybrid | standalone
  std::string interaction = "console";  // console | web | driver
  std::string device_fixture;
  std::string runs_dir = "runs";
  int port = 8080;
  std::vector<std::string> scripts;
  std::string cassette;
  std::string knowledge_dir;
  std::string judge = "evidence";  // evidence | model
  std::string mode = "clear";      // clear | vague
  int round_cap = 40;
  std::map<std::string, std::string> models;  // informational keys
};

// Names of all settings; env names are FAIRY_ + upper case.
const std::vector<std::string>& SettingNames();
std::string EnvName(const std::string& setting);

// Reads a JSON object. Throws ConfigError on syntax, unknown keys or bad
// values of the evaluation keys.
SettingLayer LayerFromConfigFile(const std::filesystem::path& path);
SettingLayer LayerFromEnv(const std::function<const char*(const char*)>& getenv_fn);

// Merges layers (highest precedence first) and validates. Throws ConfigError.
CliSettings ResolveSettings(const std::vector<SettingLayer>& layers);

}  // namespace mobagent

#endif  // MOBAGENT_CLI_CONFIG_H_
