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


#include <random>

#include "gtest/gtest.h"
#include "mobagent/core/errors.h"
#include "mobagent/core/serialization.h"
#include "mobagent/perception/compression.h"
#include "mobagent/perception/perceptor.h"
#include "mobagent/perception/providers.h"
#include "mobagent/perception/set_of_marks.h"
#include "mobagent/perception/tree.h"
#include "testing/properties.h"
#include "testing/test_util.h"

namespace mobagent {
namespace {

using testing::FixtureDir;
using testing::Node;
using testing::ReadText;

std::string XHome() { return ReadText(FixtureDir() / "screens" / "x_home.xml"); }
Json Manifest() { return ReadJsonFile(FixtureDir() / "screens" / "x_home.manifest.json"); }

struct Providers {
  SimulatedOcr ocr;
  ScriptedCaptioner captioner;
  ConcatSummarizer summarizer;
  CompressionProviders get() { return {&ocr, &captioner, &summarizer}; }
};

// ------------------------------------------------------------------ tree

TEST(TreeTest, ParsesFixtureWithHandCountedNodes) {
  const UiNode t = ParseTree(XHome());
  const Json m = Manifest();
  EXPECT_EQ(t.Count(), m["nodes"].get<int>());
  EXPECT_EQ(static_cast<int>(FindOperableNodes(t).size()), m["operable"].get<int>());
  EXPECT_EQ(t.resource_id, "x:id/home_root");
  EXPECT_EQ(t.Find({3})->resource_id, "x:id/timeline");
  EXPECT_TRUE(t.Find({3})->scrollable);
}

TEST(TreeTest, DrawOrderIsPreorder) {
  const UiNode t = ParseTree(XHome());
  int expected = 0;
  VisitPreorder(t, [&](const UiNode& n, const NodePath&) { EXPECT_EQ(n.draw_order, expected++); });
}

TEST(TreeTest, SerializeRoundTrip) {
  const UiNode t = ParseTree(XHome());
  EXPECT_EQ(ParseTree(SerializeTree(t)), t);
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    const UiNode r = testing::RandomTree(rng);
    EXPECT_EQ(ParseTree(SerializeTree(r)), r);
  }
}

TEST(TreeTest, SyntheticRootForSeveralTopLevelNodes) {
  const UiNode t = ParseTree(
      "<hierarchy><node class=\"A\" bounds=\"[0,0][10,10]\"/>"
      "<node class=\"B\" bounds=\"[20,0][30,40]\"/></hierarchy>");
  ASSERT_EQ(t.children.size(), 2u);
  EXPECT_EQ(t.bounds, (Rect{0, 0, 30, 40}));
}

TEST(TreeTest, ErrorsCarryLocation) {
  try {
    ParseTree("<node class=\"A\" bounds=\"[0,0][10,10]\">");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.byte_offset(), 0u);
  }
  EXPECT_THROW(ParseTree("<node class=\"A\" resource-id=\"r\" bounds=\"[0,0][10]\"/>"), ParseError);
  EXPECT_THROW(ParseTree("<node class=\"A\" bounds=\"[9,0][1,10]\"/>"), ParseError);
  EXPECT_THROW(ParseTree(""), ParseError);
}

// ------------------------------------------------------------------ marks

TEST(SetOfMarksTest, FixtureManifest) {
  const UiNode t = ParseTree(XHome());
  const Json m = Manifest();
  const auto som = BuildSetOfMarks(t);
  int valid = 0;
  for (const auto& e : som) valid += e.valid;
  EXPECT_EQ(valid, m["valid_marks"].get<int>());
  const auto& timeline = som[m["timeline_mark"].get<int>() - 1];
  EXPECT_EQ(timeline.kind, MarkKind::kScrollable);
  // Midpoint (540,1240) lies on the second post; the nearest free point is
  // the gap between posts two and three.
  EXPECT_EQ(timeline.center, (Point{m["timeline_click"][0], m["timeline_click"][1]}));
}

TEST(SetOfMarksTest, OverdrawnNodeIsInvalid) {
  UiNode root = Node("F", "root", "", {0, 0, 100, 100}, false, false,
                     {Node("B", "under", "", {10, 10, 30, 30}, true),
                      Node("D", "dialog", "", {0, 0, 100, 100}, true)});
  AssignDrawOrder(root);
  const auto som = BuildSetOfMarks(root);
  ASSERT_EQ(som.size(), 2u);
  EXPECT_FALSE(som[0].valid);
  EXPECT_TRUE(som[1].valid);
  EXPECT_THROW(ResolveMarks(ActionDecision({Tap{{}, 1}}, ""), som), InvalidMark);
  EXPECT_THROW(ResolveMarks(ActionDecision({Tap{{}, 9}}, ""), som), UnknownMark);
  EXPECT_EQ(RelocateMark(som, {20, 20})->mark, 2);
}

TEST(SetOfMarksTest, PartialCoverMovesClickPoint) {
  UiNode root = Node("F", "root", "", {0, 0, 100, 100}, false, false,
                     {Node("B", "wide", "", {0, 0, 100, 20}, true),
                      Node("I", "badge", "", {40, 0, 60, 20}, true)});
  AssignDrawOrder(root);
  const auto som = BuildSetOfMarks(root);
  ASSERT_TRUE(som[0].valid);
  // Midpoint (50,10) is under the badge; bounds are half-open, so (60,10)
  // is free and 10 px away, one closer than (39,10).
  EXPECT_EQ(som[0].center, (Point{60, 10}));
  EXPECT_EQ(RelocateMark(som, som[0].center)->mark, 1);
}

TEST(SetOfMarksTest, SwipeMarkResolvesInsideBox) {
  UiNode root = Node("F", "root", "", {0, 0, 100, 200}, false, false,
                     {Node("R", "list", "", {0, 0, 100, 200}, false, true)});
  AssignDrawOrder(root);
  const auto som = BuildSetOfMarks(root);
  Swipe s;
  s.mark = 1;
  s.direction = "up";
  const auto d = ResolveMarks(ActionDecision({s}, ""), som);
  const auto& r = std::get<Swipe>(d.sequence()[0]);
  EXPECT_EQ(r.from, (Point{50, 150}));
  EXPECT_EQ(r.to, (Point{50, 50}));
}

TEST(SetOfMarksTest, RandomScreensBijection) {
  std::mt19937 rng(99);
  for (int i = 0; i < 150; ++i) {
    const UiNode t = testing::RandomTree(rng);
    EXPECT_EQ(testing::CheckSomBijection(t, rng), "") << SerializeTree(t);
  }
}

TEST(SetOfMarksTest, MarkedImageHasOneRectPerValidMark) {
  const UiNode t = ParseTree(XHome());
  const auto svg = RenderMarkedImage(t, BuildSetOfMarks(t), Screenshot{"h", "shot.png"});
  size_t rects = 0;
  for (size_t p = svg.find("<rect"); p != std::string::npos; p = svg.find("<rect", p + 1)) ++rects;
  EXPECT_EQ(rects, 22u);
  EXPECT_NE(svg.find("shot.png"), std::string::npos);
}

// ------------------------------------------------------------------ compression

TEST(CompressionTest, FixtureGolden) {
  Providers p;
  const std::string out = CompressTreeNonVisual(ParseTree(XHome()), {"sim://x", ""}, p.get());
  EXPECT_EQ(out, ReadText(FixtureDir() / "screens" / "x_home.nonvisual.txt"));
  EXPECT_EQ(static_cast<int>(std::count(out.begin(), out.end(), '\n')),
            Manifest()["nonvisual_lines"].get<int>());
}

TEST(CompressionTest, OcrMismatchDropsSubtree) {
  UiNode root = Node("F", "root", "", {0, 0, 100, 100}, false, false,
                     {Node("T", "label", "Price", {0, 0, 50, 20}, false, false,
                           {Node("B", "inner", "", {0, 0, 10, 10}, true)}),
                      Node("T", "cover", "Sale!", {0, 0, 50, 20})});
  AssignDrawOrder(root);
  Providers p;
  const auto out = CompressTree(root, {}, p.get());
  const std::string text = RenderCompressed(out);
  EXPECT_EQ(text.find("label"), std::string::npos);
  EXPECT_EQ(text.find("inner"), std::string::npos);
  EXPECT_NE(text.find("Sale!"), std::string::npos);
}

TEST(CompressionTest, FoldsContentIntoOperableAncestor) {
  UiNode root = Node("F", "root", "", {0, 0, 100, 100}, false, false,
                     {Node("L", "row", "", {0, 0, 100, 50}, true, false,
                           {Node("T", "title", "Cap", {0, 0, 50, 25}),
                            Node("L", "wrap", "", {0, 25, 100, 50}, false, false,
                                 {Node("T", "price", "$15", {0, 25, 50, 50}),
                                  Node("B", "buy", "Buy", {50, 25, 100, 50}, true)})})});
  AssignDrawOrder(root);
  Providers p;
  const auto out = CompressTree(root, {}, p.get());
  // Root has one child left, so the row replaces it.
  EXPECT_EQ(out.resource_id, "row");
  EXPECT_EQ(out.description, "Cap, $15");
  ASSERT_EQ(out.children.size(), 1u);
  EXPECT_EQ(out.children[0].resource_id, "buy");
}

TEST(CompressionTest, KnowledgeAnnotationsAppended) {
  Providers p;
  const UiNode t = ParseTree(XHome());
  const std::string out =
      CompressTreeNonVisual(t, {}, p.get(), {{{5, 1}, "opens the search page"}});
  EXPECT_NE(out.find("\"icon nav search; opens the search page\""), std::string::npos);
}

class ThrowingSummarizer : public SummarizerProvider {
 public:
  std::string Summarize(const std::vector<SummaryItem>&) const override {
    throw ProviderUnavailable("summarizer down");
  }
};

TEST(CompressionTest, ProviderFailureDegrades) {
  SimulatedOcr ocr;
  ScriptedCaptioner cap;
  ThrowingSummarizer sum;
  try {
    CompressTree(ParseTree(XHome()), {}, {&ocr, &cap, &sum});
    FAIL() << "expected PerceptionDegraded";
  } catch (const PerceptionDegraded& e) {
    EXPECT_EQ(e.step(), 3);
    EXPECT_NE(e.partial().find("# degraded"), std::string::npos);
  }
  ScreenPerceptor perceptor({PerceptionMode::kNonVisual}, {&ocr, &cap, &sum});
  const auto s = perceptor.Perceive({{"h", ""}, XHome()});
  EXPECT_NE(s.textual.find("# degraded: compression step 3"), std::string::npos);
}

TEST(CompressionTest, RandomTreesHoldProperties) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 150; ++i) {
    const UiNode t = testing::RandomTree(rng);
    const auto table = testing::RandomOcrTable(rng, t);
    EXPECT_EQ(testing::CheckCompression(t, table), "") << SerializeTree(t);
  }
}

// ------------------------------------------------------------------ perceptor

TEST(PerceptorTest, VisualGolden) {
  Providers p;
  ScreenPerceptor perceptor({PerceptionMode::kVisual}, p.get());
  const auto s = perceptor.Perceive({{"sim://x", ""}, XHome()});
  EXPECT_EQ(s.textual, ReadText(FixtureDir() / "screens" / "x_home.visual.txt"));
  EXPECT_EQ(s.id, ComputePerceptionId(s));
  EXPECT_EQ(s.set_of_marks.size(), 22u);
}

TEST(PerceptorTest, NonVisualHasNoMarks) {
  Providers p;
  ScreenPerceptor perceptor({PerceptionMode::kNonVisual}, p.get());
  const auto s = perceptor.Perceive({{"sim://x", ""}, XHome()});
  EXPECT_TRUE(s.set_of_marks.empty());
  EXPECT_EQ(s.textual, ReadText(FixtureDir() / "screens" / "x_home.nonvisual.txt"));
}

TEST(PerceptorTest, RecoverOverlookedCaptionsTextlessViews) {
  Providers p;
  PerceptorOptions o;
  o.recover_overlooked = true;
  ScreenPerceptor perceptor(o, p.get());
  const auto s = perceptor.Perceive({{"sim://x", ""}, XHome()});
  EXPECT_NE(s.textual.find("[~] android.view.View(x:id/divider) \"icon divider\" @(540,279)"),
            std::string::npos);
}

TEST(PerceptorTest, SameInputSameId) {
  Providers p;
  ScreenPerceptor perceptor({PerceptionMode::kVisual}, p.get());
  const auto a = perceptor.Perceive({{"sim://x", ""}, XHome()});
  const auto b = perceptor.Perceive({{"sim://x", ""}, XHome()});
  EXPECT_EQ(a.id, b.id);
  const auto c = perceptor.Perceive({{"sim://y", ""}, XHome()});
  EXPECT_NE(a.id, c.id);
}

TEST(ProvidersTest, SimulatedOcrReadsTopmostText) {
  UiNode root = Node("F", "", "", {0, 0, 100, 100}, false, false,
                     {Node("T", "", "under", {0, 0, 50, 50}), Node("T", "", "over", {0, 0, 60, 60})});
  SimulatedOcr ocr;
  EXPECT_EQ(ocr.Recognize({}, root, {0, 0, 50, 50}), "over");
  EXPECT_EQ(ocr.Recognize({}, root, {0, 0, 90, 90}), "");
  ScriptedOcr forced(std::map<std::string, std::string>{{"[0,0][50,50]", "forced"}});
  EXPECT_EQ(forced.Recognize({}, root, {0, 0, 50, 50}), "forced");
  ScriptedCaptioner cap(std::map<std::string, std::string>{{"app:id/logo", "the logo"}});
  EXPECT_EQ(cap.Caption({}, Node("I", "app:id/logo", "", {})), "the logo");
  EXPECT_EQ(cap.Caption({}, Node("I", "app:id/nav_home", "", {})), "icon nav home");
  EXPECT_EQ(ConcatSummarizer().Summarize({{"T", "a", ""}, {"I", "", "b"}}), "a, b");
}

}  // namespace
}  // namespace mobagent
