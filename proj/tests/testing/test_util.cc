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


#include "testing/test_util.h"

#include <atomic>
#include <fstream>
#include <sstream>

#include "mobagent/perception/tree.h"

#ifndef MOBAGENT_SOURCE_DIR
#error "MOBAGENT_SOURCE_DIR must be defined"
#endif

namespace mobagent::testing {

std::filesystem::path SourceDir() { return MOBAGENT_SOURCE_DIR; }
std::filesystem::path FixtureDir() { return SourceDir() / "tests" / "fixtures"; }
std::filesystem::path SuiteDir() { return FixtureDir() / "suite"; }
std::filesystem::path CommonScript() { return FixtureDir() / "common" / "script.json"; }

ScratchDir::ScratchDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("mobagent_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

ScratchDir::~ScratchDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

UiNode Node(std::string cls, std::string rid, std::string text, Rect b, bool click,
            bool scroll, std::vector<UiNode> kids) {
  UiNode n;
  n.class_name = std::move(cls);
  n.resource_id = std::move(rid);
  n.text = std::move(text);
  n.bounds = b;
  n.clickable = click;
  n.scrollable = scroll;
  n.children = std::move(kids);
  return n;
}

int Uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

const char* kClasses[] = {"android.widget.FrameLayout", "android.widget.LinearLayout",
                          "android.widget.TextView",    "android.widget.Button",
                          "android.widget.ImageView",   "android.view.View",
                          "android.widget.EditText"};
const char* kWords[] = {"home", "search", "cart", "profile", "follow", "order",
                        "menu", "settings", "back", "share", "like", "save"};

Rect SubRect(std::mt19937& rng, const Rect& p) {
  const int w = std::max(1, p.width()), h = std::max(1, p.height());
  const int l = p.left + Uniform(rng, 0, std::max(0, w / 2 - 1));
  const int t = p.top + Uniform(rng, 0, std::max(0, h / 2 - 1));
  const int r = std::min(p.right, l + std::max(1, Uniform(rng, w / 4, w)));
  const int b = std::min(p.bottom, t + std::max(1, Uniform(rng, h / 4, h)));
  return {l, t, std::max(r, l + 1), std::max(b, t + 1)};
}

void Grow(std::mt19937& rng, UiNode& n, int& budget, int depth, const TreeGenOptions& o) {
  const int kids = depth > 5 ? 0 : Uniform(rng, 0, 4);
  for (int i = 0; i < kids && budget > 0; ++i) {
    --budget;
    UiNode c;
    c.class_name = kClasses[Uniform(rng, 0, 6)];
    c.resource_id = "app:id/n" + std::to_string(Uniform(rng, 0, 30));
    c.bounds = Chance(rng, o.overlay_p) ? n.bounds : SubRect(rng, n.bounds);
    if (Chance(rng, o.text_p))
      c.text = std::string(kWords[Uniform(rng, 0, 11)]) + " " + std::to_string(Uniform(rng, 0, 99));
    c.clickable = Chance(rng, o.operable_p);
    c.scrollable = !c.clickable && Chance(rng, o.operable_p / 4);
    Grow(rng, c, budget, depth + 1, o);
    n.children.push_back(std::move(c));
  }
}

}  // namespace

UiNode RandomTree(std::mt19937& rng, const TreeGenOptions& options) {
  UiNode root;
  root.class_name = "android.widget.FrameLayout";
  root.resource_id = "app:id/root";
  root.bounds = {0, 0, options.width, options.height};
  int budget = Uniform(rng, 1, options.max_nodes - 1);
  while (budget > 0) {
    const int before = budget;
    Grow(rng, root, budget, 1, options);
    if (budget == before) break;
  }
  AssignDrawOrder(root);
  return root;
}

std::string ReadText(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace mobagent::testing
