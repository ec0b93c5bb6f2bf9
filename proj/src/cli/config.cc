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


#include "mobagent/cli/config.h"

#include <set>

#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"

namespace mobagent {

namespace {

const std::set<std::string> kModelKeys = {
    "Core Large Multimodal Model", "Retrieval Augmented Generation Model",
    "Retrieval Embedding Model",   "Visual Prompt Model",
    "Text Summarization Model",    "Action Executor Type",
    "Screenshot Getter Type",      "Manual Application Info Collection",
};

std::string Scalar(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  if (v.is_array()) {
    std::vector<std::string> parts;
    for (const auto& e : v) parts.push_back(Scalar(e, key));
    return Join(parts, ";");
  }
  throw ConfigError("config key '" + key + "' has an unsupported value");
}

void Check(const std::string& name, const std::string& value,
           const std::vector<std::string>& allowed) {
  for (const auto& a : allowed)
    if (value == a) return;
  throw ConfigError(name + " must be one of " + Join(allowed, ", ") + ", got '" + value + "'");
}

int ToInt(const std::string& name, const std::string& value, int lo, int hi) {
  try {
    size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size() && v >= lo && v <= hi) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(name + " must be an integer in [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "], got '" + value + "'");
}

}  // namespace

const std::vector<std::string>& SettingNames() {
  static const std::vector<std::string> names = {
      "provider", "perception", "reflection", "interaction", "device_fixture",
      "runs_dir", "port",       "script",     "cassette",    "knowledge_dir",
      "judge",    "mode",       "round_cap",
  };
  return names;
}

std::string EnvName(const std::string& setting) {
  std::string out = "FAIRY_";
  for (char c : setting) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

SettingLayer LayerFromConfigFile(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(ReadFile(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const NotFound& e) {
    throw ConfigError(e.what());
  }
  if (!j.is_object()) throw ConfigError(path.string() + ": config must be a JSON object");
  SettingLayer layer;
  const auto& names = SettingNames();
  for (const auto& [key, value] : j.items()) {
    const std::string v = Scalar(value, key);
    if (std::find(names.begin(), names.end(), key) != names.end()) {
      layer[key] = v;
    } else if (key == "Reflection Policy") {
      layer["reflection"] = ToLower(v);
    } else if (key == "Non-visual Execution Mode") {
      layer["perception"] = ToLower(v) == "true" ? "nonvisual" : "visual";
    } else if (key == "Screen Perception Type") {
      if (ToLower(v) != "ssip")
        throw ConfigError("Screen Perception Type must be SSIP, got '" + v + "'");
    } else if (key == "Interaction Mode") {
      const std::string m = ToLower(v);
      layer["interaction"] = m == "dialog" ? "console" : m;
    } else if (kModelKeys.count(key)) {
      layer["model:" + key] = v;
    } else {
      throw ConfigError(path.string() + ": unknown config key '" + key + "'");
    }
  }
  return layer;
}

SettingLayer LayerFromEnv(const std::function<const char*(const char*)>& getenv_fn) {
  SettingLayer layer;
  for (const auto& name : SettingNames())
    if (const char* v = getenv_fn(EnvName(name).c_str()); v && *v) layer[name] = v;
  return layer;
}

CliSettings ResolveSettings(const std::vector<SettingLayer>& layers) {
  SettingLayer merged;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it)
    for (const auto& [k, v] : *it) merged[k] = v;
  CliSettings s;
  auto get = [&](const std::string& k, std::string& out) {
    if (auto it = merged.find(k); it != merged.end()) out = it->second;
  };
  get("provider", s.provider);
  get("perception", s.perception);
  get("reflection", s.reflection);
  get("interaction", s.interaction);
  get("device_fixture", s.device_fixture);
  get("runs_dir", s.runs_dir);
  get("cassette", s.cassette);
  get("knowledge_dir", s.knowledge_dir);
  get("judge", s.judge);
  get("mode", s.mode);
  if (auto it = merged.find("port"); it != merged.end()) s.port = ToInt("port", it->second, 0, 65535);
  if (auto it = merged.find("round_cap"); it != merged.end())
    s.round_cap = ToInt("round_cap", it->second, 1, 100000);
  if (auto it = merged.find("script"); it != merged.end())
    for (const auto& p : Split(it->second, ';'))
      if (!Trim(p).empty()) s.scripts.push_back(Trim(p));
  for (const auto& [k, v] : merged)
    if (StartsWith(k, "model:")) s.models[k.substr(6)] = v;
  Check("provider", s.provider, {"scripted", "replay", "record"});
  Check("perception", s.perception, {"visual", "nonvisual"});
  Check("reflection", s.reflection, {"hybrid", "standalone"});
  Check("interaction", s.interaction, {"console", "web", "driver"});
  Check("judge", s.judge, {"evidence", "model"});
  Check("mode", s.mode, {"clear", "vague"});
  return s;
}

}  // namespace mobagent
