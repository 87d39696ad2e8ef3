#include <gtest/gtest.h>

#include "modblob/render.hpp"
#include "support.hpp"

using namespace modblob;
using namespace modblob::testing;

namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Render, Deterministic) {
  const BlobDiagram b = make_blob(fixture("torus").word);
  EXPECT_EQ(render_svg(b), render_svg(b));
}

TEST(Render, WellFormedSvg) {
  const std::string svg = render_svg(kidney(1));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_EQ(count(svg, "<svg"), 1);
  EXPECT_EQ(count(svg, "</svg>"), 1);
  EXPECT_EQ(count(svg, "<g "), count(svg, "</g>"));
}

TEST(Render, LabelsCrossingsAndConcaveTangencies) {
  const std::string torus = render_svg(make_blob(fixture("torus").word));
  for (const char* t : {">I<", ">II<", ">III<", ">IV<"}) EXPECT_EQ(count(torus, t), 1) << t;
  const std::string k = render_svg(kidney(1));
  EXPECT_EQ(count(k, "⊕"), 1);
  EXPECT_EQ(count(k, "⊖"), 0);
  EXPECT_EQ(count(render_svg(kidney(-1)), "⊖"), 1);
}

TEST(Render, ShadingOnlyForBlobs) {
  const StrandDiagram w = kidney_word(1);
  EXPECT_EQ(count(render_svg(w), "<polygon"), 0);
  EXPECT_GT(count(render_svg(make_blob(w)), "<polygon"), 0);
  RenderSpec plain;
  plain.shade_faces = false;
  plain.label_crossings = plain.label_tangencies = false;
  const std::string svg = render_svg(make_blob(fixture("alpha1").word), plain);
  EXPECT_EQ(count(svg, "<polygon"), 0);
  EXPECT_EQ(count(svg, "<text"), 0);
}

TEST(Render, OneStrokePerStrandPiece) {
  // each slab draws its strands, each event its through strands plus the moving pair
  std::mt19937_64 rng(61);
  for (int i = 0; i < 50; ++i) {
    const BlobDiagram b = random_blob(rng, false, 5);
    const Replay r = replay(b.doodle);
    int expected = 0;
    for (const auto& slab : r.slabs) expected += static_cast<int>(slab.size());
    for (std::size_t k = 0; k < b.doodle.events.size(); ++k) {
      const auto& e = b.doodle.events[k];
      const int n = static_cast<int>(std::min(r.slabs[k].size(), r.slabs[k + 1].size()));
      expected += e.kind == EventKind::Cross ? n : n + 1;
    }
    EXPECT_EQ(count(render_svg(b), "<polyline"), expected) << word_string(b.doodle);
  }
}
