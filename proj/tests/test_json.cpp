#include <gtest/gtest.h>

#include "modblob/json_io.hpp"
#include "support.hpp"

using namespace modblob;
using namespace modblob::testing;

TEST(Json, DiagramRoundTrip) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 100; ++i) {
    const BlobDiagram b = random_blob(rng, false);
    EXPECT_EQ(blob_from_json(parse_json(dump(to_json(b)))), b);
    EXPECT_EQ(diagram_from_json(to_json(b.doodle)), b.doodle);
  }
}

TEST(Json, ThetaAndCycleFields) {
  StrandDiagram d = parse_word({"B0+", "D0"});
  d.events[0].theta = ratio(1, 3);
  d.events[1].theta = ratio(2, 3);
  const Json j = to_json(d);
  EXPECT_EQ(j["events"][0]["theta"], "1/3");
  EXPECT_EQ(diagram_from_json(j), d);

  StrandDiagram c;
  c.base = BaseSpace::cycle(2);
  c.wrap_dirs = {true, false};
  EXPECT_EQ(diagram_from_json(parse_json(dump(to_json(c)))), c);
}

TEST(Json, AcceptsShortKindsAndDecimals) {
  const StrandDiagram d = diagram_from_json(parse_json(
      R"({"base": "strip", "events": [{"kind": "B", "slot": 0, "orient_bit": "+", "theta": 0.25},
                                      {"kind": "D", "slot": 0, "theta": "3/4"}]})"));
  EXPECT_EQ(word_string(d), "[B0+ D0]");
  EXPECT_EQ(*d.events[0].theta, ratio(1, 4));
}

TEST(Json, FacesAreOptional) {
  const Json j = to_json(kidney_word(1));
  EXPECT_FALSE(has_faces(j));
  EXPECT_EQ(blob_from_json(j), kidney(1));
  EXPECT_TRUE(has_faces(to_json(kidney(1))));
}

TEST(Json, MalformedInputs) {
  for (const char* bad : {"", "{", "[1,2]", R"({"events": 3})", R"({"events": [{"kind": "Q", "slot": 0}]})",
                          R"({"events": [{"kind": "birth", "slot": -1}]})", R"({"base": "torus", "events": []})"}) {
    try {
      diagram_from_json(parse_json(bad));
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedInput) << bad;
    }
  }
}

TEST(Json, ReportRoundTrip) {
  for (const auto& f : builtin_fixtures()) {
    ASSERT_TRUE(f.expected.has_value());
    EXPECT_EQ(report_from_json(parse_json(dump(to_json(*f.expected)))), *f.expected) << f.name;
  }
  const Json j = to_json(*fixture("alpha1").expected);
  EXPECT_EQ(j["iota_rho"], Json::array({1, 0, 1}));
  EXPECT_EQ(j["in_blob_image"], true);
}

TEST(Json, TraceRoundTrip) {
  const NormalizeResult r = normalize_embedded(make_blob(scramble(kidney_word(-2), 5, 20)));
  const MoveTrace t = trace_from_json(parse_json(dump(to_json(r.trace))));
  EXPECT_EQ(t.moves, r.trace.moves);
  EXPECT_TRUE(replay_trace(t, MoveFilter::embedded()).same_word(kidney_word(-2)));
}

TEST(Json, FamilyAndCurvesRoundTrip) {
  const PolynomialFamily k = kappa_family();
  const PolynomialFamily back = family_from_json(parse_json(dump(to_json(k))));
  EXPECT_EQ(back.breakpoints, k.breakpoints);
  EXPECT_EQ(back.pieces, k.pieces);
  EXPECT_EQ(back.degree, k.degree);

  ParametricCurveSet s;
  s.curves.push_back(kidney_curve());
  const ParametricCurveSet c = curves_from_json(parse_json(dump(to_json(s))));
  ASSERT_EQ(c.curves.size(), 1u);
  EXPECT_EQ(curves_to_diagram(c), curves_to_diagram(s));
}

TEST(Json, DumpIsStable) {
  const std::string a = dump(to_json(kidney(2)));
  EXPECT_EQ(a, dump(parse_json(a)));
  EXPECT_EQ(a.back(), '\n');
}
