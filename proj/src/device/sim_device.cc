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

#include "mobagent/device/sim_device.h"

#include <algorithm>
#include <cstdlib>
#include <regex>

#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/core/strings.h"
#include "mobagent/learning/app_map.h"
#include "mobagent/perception/tree.h"

namespace mobagent {

namespace {

constexpr int kLauncherWidth = 1080;
constexpr int kLauncherHeight = 2400;
constexpr int kLauncherRow = 200;

GestureKind ParseKind(const std::string& s, int line) {
  if (s == "tap") return GestureKind::kTap;
  if (s == "longpress") return GestureKind::kLongPress;
  if (s == "swipe") return GestureKind::kSwipe;
  if (s == "key") return GestureKind::kKey;
  throw FixtureError("transitions line " + std::to_string(line) + ": unknown kind '" + s +
                     "'");
}

std::string SwipeDirection(Point from, Point to) {
  const int dx = to.x - from.x, dy = to.y - from.y;
  if (std::abs(dy) >= std::abs(dx)) return dy < 0 ? "up" : "down";
  return dx < 0 ? "left" : "right";
}

bool IsInputField(const UiNode& n) {
  return SimpleClassName(n.class_name).find("EditText") != std::string::npos;
}

ActionOutcome Outcome(const AtomicAction& a, const std::string& screen) {
  ActionOutcome o;
  o.action = Describe(a);
  o.status = kStatusOk;
  o.from_screen = screen;
  o.to_screen = screen;
  return o;
}

}  // namespace

Transition ParseTransition(const std::string& row, int line) {
  const std::vector<std::string> cols = Split(row, '|');
  if (cols.size() != 5)
    throw FixtureError("transitions line " + std::to_string(line) +
                       ": expected 5 columns, got " + std::to_string(cols.size()));
  Transition t;
  t.line = line;
  t.from = Trim(cols[0]);
  t.kind = ParseKind(Trim(cols[1]), line);
  t.to = Trim(cols[3]);
  t.effects = Trim(cols[4]);
  const std::vector<std::string> tokens = Split(NormalizeWhitespace(cols[2]), ' ');
  bool have_target = false;
  for (const auto& tok : tokens) {
    if (tok.empty()) continue;
    if (StartsWith(tok, "buffer=")) {
      t.buffer = tok.substr(7);
      try {
        std::regex check(*t.buffer);
      } catch (const std::regex_error&) {
        throw FixtureError("transitions line " + std::to_string(line) +
                           ": bad buffer pattern '" + *t.buffer + "'");
      }
    } else if (StartsWith(tok, "dir=")) {
      t.direction = tok.substr(4);
      if (t.direction != "up" && t.direction != "down" && t.direction != "left" &&
          t.direction != "right")
        throw FixtureError("transitions line " + std::to_string(line) +
                           ": bad direction '" + t.direction + "'");
    } else if (!have_target) {
      have_target = true;
      if (t.kind == GestureKind::kKey) {
        t.key = tok;
      } else if (tok != "*") {
        try {
          t.region = ParseBounds(tok, "transition", 0);
        } catch (const ParseError& e) {
          throw FixtureError("transitions line " + std::to_string(line) + ": " + e.what());
        }
      }
    } else {
      throw FixtureError("transitions line " + std::to_string(line) +
                         ": unexpected token '" + tok + "'");
    }
  }
  if (!have_target)
    throw FixtureError("transitions line " + std::to_string(line) + ": missing matcher");
  if (t.from.empty() || t.to.empty())
    throw FixtureError("transitions line " + std::to_string(line) + ": empty endpoint");
  if (t.to == "-") t.to = t.from;
  return t;
}

AppFixture LoadAppFixture(const std::filesystem::path& app_dir) {
  AppFixture app;
  const auto meta_path = app_dir / "app.meta";
  if (!std::filesystem::exists(meta_path))
    throw FixtureError(meta_path.string() + " is missing");
  for (const auto& raw : Split(ReadFile(meta_path), '\n')) {
    const std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw FixtureError(meta_path.string() + ": expected 'key: value' in '" + line + "'");
    const std::string key = Trim(line.substr(0, colon));
    const std::string value = Trim(line.substr(colon + 1));
    if (key == "package") app.meta.package_name = value;
    else if (key == "display_name") app.meta.display_name = value;
    else if (key == "description") app.meta.description = value;
    else if (key == "initial") app.initial = value;
    else throw FixtureError(meta_path.string() + ": unknown key '" + key + "'");
  }
  if (app.meta.package_name.empty())
    throw FixtureError(meta_path.string() + ": package is required");
  if (app.initial.empty()) throw FixtureError(meta_path.string() + ": initial is required");

  const auto screens_dir = app_dir / "screens";
  if (std::filesystem::is_directory(screens_dir)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(screens_dir))
      if (entry.path().extension() == ".xml") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      ScreenDef s;
      s.id = f.stem().string();
      try {
        s.tree = ParseTree(ReadFile(f));
      } catch (const ParseError& e) {
        throw ParseError(f.string() + ": " + e.what(), e.byte_offset());
      }
      auto png = f;
      png.replace_extension(".png");
      if (std::filesystem::exists(png)) s.png = png.string();
      app.screens[s.id] = std::move(s);
    }
  }
  if (!app.screens.count(app.initial))
    throw FixtureError(app_dir.string() + ": initial screen '" + app.initial +
                       "' has no screens/" + app.initial + ".xml");

  const auto table = app_dir / "transitions.table";
  if (std::filesystem::exists(table)) {
    int line_no = 0;
    for (const auto& raw : Split(ReadFile(table), '\n')) {
      ++line_no;
      const std::string line = Trim(raw);
      if (line.empty() || line[0] == '#') continue;
      Transition t = ParseTransition(line, line_no);
      for (const std::string* end : {&t.from, &t.to})
        if (!app.screens.count(*end))
          throw FixtureError(table.string() + " line " + std::to_string(line_no) +
                             ": unknown screen '" + *end + "'");
      app.transitions.push_back(std::move(t));
    }
  }
  return app;
}

ScreenGraph LoadScreenGraph(const std::filesystem::path& fixture_dir) {
  if (!std::filesystem::is_directory(fixture_dir))
    throw FixtureError("fixture directory not found: " + fixture_dir.string());
  ScreenGraph graph;
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir))
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "app.meta"))
      dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    AppFixture app = LoadAppFixture(d);
    const std::string pkg = app.meta.package_name;
    if (graph.apps.count(pkg)) throw FixtureError("duplicate package " + pkg);
    graph.apps[pkg] = std::move(app);
  }
  return graph;
}

SimDevice::SimDevice(ScreenGraph graph) : graph_(std::move(graph)) {}

std::string SimDevice::ScreenId() const {
  if (state_.current_app.empty()) return "launcher";
  return state_.current_app + "/" + state_.current_screen;
}

void SimDevice::Log(const std::string& kind, const std::string& detail) {
  log_.push_back({static_cast<int>(log_.size()), kind, detail});
}

UiNode SimDevice::LauncherTree() const {
  UiNode root;
  root.class_name = "android.widget.FrameLayout";
  root.resource_id = "launcher:id/workspace";
  root.bounds = {0, 0, kLauncherWidth, kLauncherHeight};
  int row = 0;
  for (const auto& [pkg, app] : graph_.apps) {
    UiNode icon;
    icon.class_name = "android.widget.TextView";
    icon.resource_id = "launcher:id/app_icon";
    icon.text = app.meta.display_name.empty() ? pkg : app.meta.display_name;
    icon.clickable = true;
    icon.bounds = {0, row * kLauncherRow, kLauncherWidth, (row + 1) * kLauncherRow};
    root.children.push_back(std::move(icon));
    ++row;
  }
  AssignDrawOrder(root);
  return root;
}

UiNode SimDevice::CurrentTree() const {
  if (state_.current_app.empty()) return LauncherTree();
  UiNode tree =
      graph_.apps.at(state_.current_app).screens.at(state_.current_screen).tree;
  if (state_.input_focus)
    if (UiNode* field = tree.Find(*state_.input_focus)) field->text = state_.input_buffer;
  return tree;
}

RawScreen SimDevice::Capture() {
  RawScreen raw;
  raw.screenshot.handle = "sim://" + ScreenId();
  if (!state_.current_app.empty())
    raw.screenshot.path =
        graph_.apps.at(state_.current_app).screens.at(state_.current_screen).png;
  raw.xml = SerializeTree(CurrentTree());
  return raw;
}

std::vector<std::string> SimDevice::ListApps() const {
  std::vector<std::string> out;
  for (const auto& [pkg, app] : graph_.apps) out.push_back(pkg);
  return out;
}

std::vector<AppMetadata> SimDevice::InstalledApps() const {
  std::vector<AppMetadata> out;
  for (const auto& [pkg, app] : graph_.apps) out.push_back(app.meta);
  return out;
}

void SimDevice::StartApp(const std::string& package) {
  auto it = graph_.apps.find(package);
  if (it == graph_.apps.end()) throw AppNotFound(package);
  state_.current_app = package;
  state_.input_focus.reset();
  state_.input_buffer.clear();
  state_.current_screen = it->second.initial;
  Log("app", package);
  Log("screen", ScreenId());
}

void SimDevice::Install(AppFixture app) {
  const std::string pkg = app.meta.package_name;
  graph_.apps[pkg] = std::move(app);
}

void SimDevice::Uninstall(const std::string& package) {
  graph_.apps.erase(package);
  if (state_.current_app == package) state_ = DeviceState{{}, {}, {}, {}, state_.clock};
}

void SimDevice::MoveTo(const std::string& screen) {
  if (screen == state_.current_screen) return;
  state_.current_screen = screen;
  state_.input_focus.reset();
  state_.input_buffer.clear();
  Log("screen", ScreenId());
}

const Transition* SimDevice::FindTransition(GestureKind kind, Point at,
                                            const std::string& direction,
                                            const std::string& key) const {
  const AppFixture& app = graph_.apps.at(state_.current_app);
  for (const auto& t : app.transitions) {
    if (t.from != state_.current_screen || t.kind != kind) continue;
    if (kind == GestureKind::kKey) {
      if (ToLower(t.key) != ToLower(key)) continue;
    } else {
      if (t.region && !t.region->Contains(at)) continue;
      if (kind == GestureKind::kSwipe && !t.direction.empty() && t.direction != direction)
        continue;
    }
    if (t.buffer &&
        !std::regex_match(state_.input_buffer,
                          std::regex(*t.buffer, std::regex::icase)))
      continue;
    return &t;
  }
  return nullptr;
}

ActionOutcome SimDevice::Gesture(GestureKind kind, Point at, const std::string& direction,
                                 const std::string& key, ActionOutcome out) {
  bool focused = false;
  if (kind == GestureKind::kTap) {
    const UiNode tree = CurrentTree();
    if (auto path = LocalizeNode(tree, at)) {
      for (NodePath p = *path;; p.pop_back()) {
        if (IsInputField(*tree.Find(p))) {
          if (state_.input_focus != p) {
            state_.input_focus = p;
            // A prefilled field keeps its text, as real ones do.
            state_.input_buffer = tree.Find(p)->text;
            focused = true;
          }
          break;
        }
        if (p.empty()) break;
      }
    }
  }
  const Transition* t = FindTransition(kind, at, direction, key);
  if (!t) {
    out.status = focused ? kStatusOk : kStatusNoEffect;
    if (focused) out.effect = "input focused";
    return out;
  }
  const std::string buffer = state_.input_buffer;
  if (t->buffer) Log("input", buffer);
  std::string effects = ReplaceAll(t->effects, "{buffer}", buffer);
  if (!effects.empty()) Log("effect", effects);
  MoveTo(t->to);
  out.effect = effects;
  out.to_screen = ScreenId();
  return out;
}

ActionOutcome SimDevice::Apply(const AtomicAction& action, bool& fatal) {
  ActionOutcome out = Outcome(action, ScreenId());
  Log("action", out.action);
  if (ActionMark(action)) {
    out.status = kStatusError;
    out.error = "UnresolvedMark";
    fatal = true;
    return out;
  }
  if (auto p = ActionPoint(action)) {
    const Rect screen = CurrentTree().bounds;
    bool inside = screen.Contains(*p);
    if (const auto* s = std::get_if<Swipe>(&action)) inside = inside && screen.Contains(s->to);
    if (!inside) {
      out.status = kStatusError;
      out.error = "OutOfBounds";
      fatal = true;
      return out;
    }
  }
  const bool gesture = std::holds_alternative<Tap>(action) ||
                       std::holds_alternative<LongPress>(action) ||
                       std::holds_alternative<Swipe>(action) ||
                       std::holds_alternative<KeyEvent>(action);
  if (gesture && state_.current_app.empty()) {
    // Launcher: tapping an icon opens its app.
    const auto* tap = std::get_if<Tap>(&action);
    const int row = tap ? tap->at.y / kLauncherRow : -1;
    if (row >= 0 && row < static_cast<int>(graph_.apps.size())) {
      StartApp(std::next(graph_.apps.begin(), row)->first);
      out.to_screen = ScreenId();
    } else {
      out.status = kStatusNoEffect;
    }
    return out;
  }
  if (const auto* tap = std::get_if<Tap>(&action))
    return Gesture(GestureKind::kTap, tap->at, "", "", out);
  if (const auto* lp = std::get_if<LongPress>(&action))
    return Gesture(GestureKind::kLongPress, lp->at, "", "", out);
  if (const auto* sw = std::get_if<Swipe>(&action))
    return Gesture(GestureKind::kSwipe, sw->from, SwipeDirection(sw->from, sw->to), "", out);
  if (const auto* key = std::get_if<KeyEvent>(&action))
    return Gesture(GestureKind::kKey, {}, "", key->key, out);
  if (const auto* in = std::get_if<Input>(&action)) {
    if (!state_.input_focus) {
      out.status = kStatusError;
      out.error = "NoInputFocus";
      return out;
    }
    state_.input_buffer += in->text;
    out.effect = "typed \"" + in->text + "\"";
    return out;
  }
  if (std::holds_alternative<ClearInput>(action)) {
    if (!state_.input_focus) {
      out.status = kStatusError;
      out.error = "NoInputFocus";
      return out;
    }
    state_.input_buffer.clear();
    out.effect = "input cleared";
    return out;
  }
  if (const auto* w = std::get_if<Wait>(&action)) {
    state_.clock += w->duration;
    return out;
  }
  if (std::holds_alternative<mobagent::ListApps>(action)) {
    out.effect = Join(ListApps(), ", ");
    return out;
  }
  if (const auto* start = std::get_if<mobagent::StartApp>(&action)) {
    try {
      StartApp(start->package);
      out.to_screen = ScreenId();
    } catch (const AppNotFound&) {
      out.status = kStatusError;
      out.error = "AppNotFound";
    }
    return out;
  }
  // Finish and NeedInteraction leave the device alone.
  return out;
}

std::vector<ActionOutcome> SimDevice::Execute(const std::vector<AtomicAction>& actions) {
  std::vector<ActionOutcome> outcomes;
  bool fatal = false;
  for (const auto& a : actions) {
    if (fatal) {
      ActionOutcome skipped = Outcome(a, ScreenId());
      skipped.status = kStatusSkipped;
      outcomes.push_back(std::move(skipped));
      continue;
    }
    outcomes.push_back(Apply(a, fatal));
  }
  return outcomes;
}

}  // namespace mobagent
