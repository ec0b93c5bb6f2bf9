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

// Fixture-driven device. A fixture directory holds one subdirectory per
// app (README.md, "Device fixtures", has the row grammar):
//
//   <app>/app.meta            "key: value" lines: package, display_name,
//                             description, initial
//   <app>/screens/<id>.xml    accessibility tree of each screen
//   <app>/screens/<id>.png    optional screenshot
//   <app>/transitions.table   from | kind | matcher | to | side-effects
//
// Transitions are tried in file order and the first match wins.

#ifndef MOBAGENT_DEVICE_SIM_DEVICE_H_
#define MOBAGENT_DEVICE_SIM_DEVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mobagent/device/device.h"

namespace mobagent {

enum class GestureKind { kTap, kLongPress, kSwipe, kKey };

struct Transition {
  std::string from;
  GestureKind kind = GestureKind::kTap;
  std::optional<Rect> region;          // absent: anywhere ("*")
  std::string key;                     // kKey only
  std::string direction;               // kSwipe only, empty: any
  std::optional<std::string> buffer;   // regex the input buffer must match
  std::string to;                      // screen id; same as from to stay
  std::string effects;                 // may contain {buffer}
  int line = 0;
};

struct ScreenDef {
  std::string id;
  UiNode tree;
  std::string png;  // empty when absent
};

struct AppFixture {
  AppMetadata meta;
  std::string initial;
  std::map<std::string, ScreenDef> screens;
  std::vector<Transition> transitions;
};

struct ScreenGraph {
  std::map<std::string, AppFixture> apps;  // by package
};

// Throws FixtureError (or ParseError for a bad screen) naming the file.
AppFixture LoadAppFixture(const std::filesystem::path& app_dir);
ScreenGraph LoadScreenGraph(const std::filesystem::path& fixture_dir);
Transition ParseTransition(const std::string& row, int line);

struct DeviceState {
  std::string current_app;
  std::string current_screen;
  std::optional<NodePath> input_focus;
  std::string input_buffer;
  double clock = 0;  // simulated seconds
  bool operator==(const DeviceState&) const = default;
};

class SimDevice : public DeviceBackend {
 public:
  explicit SimDevice(ScreenGraph graph);

  RawScreen Capture() override;
  std::vector<ActionOutcome> Execute(const std::vector<AtomicAction>& actions) override;
  std::vector<std::string> ListApps() const override;
  std::vector<AppMetadata> InstalledApps() const override;
  void StartApp(const std::string& package) override;
  std::string CurrentApp() const override { return state_.current_app; }
  std::string CurrentScreen() const override { return state_.current_screen; }
  std::vector<ActivityEvent> ActivityLog() const override { return log_; }

  const DeviceState& state() const { return state_; }
  // Tree currently shown, with the input buffer drawn into the focused field.
  UiNode CurrentTree() const;

  void Install(AppFixture app);
  void Uninstall(const std::string& package);

 private:
  ActionOutcome Apply(const AtomicAction& action, bool& fatal);
  ActionOutcome Gesture(GestureKind kind, Point at, const std::string& direction,
                        const std::string& key, ActionOutcome out);
  const Transition* FindTransition(GestureKind kind, Point at,
                                   const std::string& direction,
                                   const std::string& key) const;
  void MoveTo(const std::string& screen);
  void Log(const std::string& kind, const std::string& detail);
  std::string ScreenId() const;  // "<package>/<screen>"
  UiNode LauncherTree() const;

  ScreenGraph graph_;
  DeviceState state_;
  std::vector<ActivityEvent> log_;
};

}  // namespace mobagent

#endif  // MOBAGENT_DEVICE_SIM_DEVICE_H_
