#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "modblob/json_io.hpp"
#include "support.hpp"

using namespace modblob;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("modblob_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, FixturePipesIntoInvariants) {
  const CliRun fx = run({"fixtures", "kidney+1"});
  ASSERT_EQ(fx.code, 0);
  const CliRun inv = run({"invariants", "-"}, fx.out);
  ASSERT_EQ(inv.code, 0) << inv.err;
  EXPECT_NE(inv.out.find("J           1"), std::string::npos);
  EXPECT_NE(inv.out.find("c_plus      1"), std::string::npos);
  EXPECT_NE(inv.out.find("rho_I       0"), std::string::npos);
}

TEST(Cli, FixtureNamesAsInput) {
  const CliRun inv = run({"invariants", "kidney-3"});
  ASSERT_EQ(inv.code, 0) << inv.err;
  EXPECT_NE(inv.out.find("J           -3"), std::string::npos);
  EXPECT_EQ(run({"equiv", "kidney+1", "kidney-1"}).code, cli::kInequivalent);
  EXPECT_EQ(run({"validate", "no-such-thing"}).code, cli::kMalformed);
}

TEST(Cli, AlphaOneJson) {
  const CliRun inv = run({"invariants", "-", "--json"}, run({"fixtures", "alpha1"}).out);
  ASSERT_EQ(inv.code, 0);
  const Json j = parse_json(inv.out);
  EXPECT_EQ(j["rho"]["I"], 1);
  EXPECT_EQ(j["rho"]["III"], 0);
  EXPECT_EQ(j["iota_rho"][2], 1);
}

TEST(Cli, DoodleFixtures) {
  const CliRun inv = run({"invariants", "-", "--json"}, run({"fixtures", "betatilde"}).out);
  ASSERT_EQ(inv.code, 0);
  EXPECT_EQ(parse_json(inv.out)["mode"], "doodle");
}

TEST(Cli, EquivExitCodes) {
  const std::string a = temp_file("k1.json", run({"fixtures", "kidney+1"}).out);
  const std::string b = temp_file("km1.json", run({"fixtures", "kidney-1"}).out);
  EXPECT_EQ(run({"equiv", a, b, "--depth", "6"}).code, cli::kInequivalent);
  const CliRun same = run({"equiv", a, a, "--depth", "2"});
  EXPECT_EQ(same.code, cli::kOk);
  EXPECT_EQ(trace_from_json(parse_json(same.out)).moves.size(), 0u);
  EXPECT_EQ(run({"equiv", a, b, "--depth", "2", "--no-prefilter"}).code, cli::kDepthExceeded);
  EXPECT_EQ(run({"equiv", a, b, "--depth", "50"}).code, cli::kDepthExceeded);
}

TEST(Cli, MalformedAndInvalid) {
  EXPECT_EQ(run({"invariants", "-"}, "{not json").code, cli::kMalformed);
  EXPECT_EQ(run({"validate", "-"}, R"({"events": [{"kind": "birth", "slot": 0, "orient_bit": "+"}]})").code,
            cli::kInvalid);
  EXPECT_EQ(run({"validate", "/nonexistent/file.json"}).code, cli::kMalformed);
  EXPECT_EQ(run({"bogus"}).code, cli::kMalformed);
  EXPECT_EQ(run({}).code, cli::kMalformed);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST(Cli, NormalizeWritesTrace) {
  const std::string trace = (std::filesystem::temp_directory_path() / "modblob_cli_trace.json").string();
  const CliRun r = run({"normalize", "-", "--trace", trace}, run({"fixtures", "kidney+2", "--steps", "20", "--seed", "3"}).out);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(blob_from_json(parse_json(r.out)).doodle.same_word(kidney_word(2)));
  std::ifstream in(trace);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_TRUE(replay_trace(trace_from_json(parse_json(text.str())), MoveFilter::embedded()).same_word(kidney_word(2)));
}

TEST(Cli, ComposeNegateRender) {
  const std::string k = temp_file("k.json", dump(to_json(kidney(1))));
  const CliRun c = run({"compose", k, k});
  ASSERT_EQ(c.code, 0);
  EXPECT_TRUE(blob_from_json(parse_json(c.out)).doodle.same_word(kidney_word(2)));
  const CliRun n = run({"negate", k});
  EXPECT_TRUE(blob_from_json(parse_json(n.out)).doodle.same_word(kidney_word(-1)));
  const CliRun svg = run({"render", k});
  EXPECT_EQ(svg.code, 0);
  EXPECT_NE(svg.out.find("<svg"), std::string::npos);
}

TEST(Cli, FromFamilyAndCurves) {
  const std::string fam = temp_file("kappa.json", dump(to_json(kappa_family())));
  const CliRun f = run({"from-family", fam});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_TRUE(blob_from_json(parse_json(f.out)).doodle.same_word(kidney_word(1)));
  EXPECT_EQ(run({"from-family", temp_file("tri.json", dump(to_json(triple_root_family())))}).code, cli::kInvalid);

  ParametricCurveSet s;
  s.curves.push_back(kidney_curve());
  const CliRun c = run({"from-curves", "-"}, dump(to_json(s)));
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_TRUE(diagram_from_json(parse_json(c.out)).same_word(kidney_word(1)));
}

TEST(Cli, FixturesSelftestAndExport) {
  const CliRun st = run({"fixtures", "--selftest"});
  EXPECT_EQ(st.code, 0);
  EXPECT_EQ(st.out.find("FAIL"), std::string::npos);
  const auto dir = std::filesystem::temp_directory_path() / "modblob_cli_export";
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run({"fixtures", "--export", dir.string()}).code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "torus.json"));
  EXPECT_EQ(load_fixture_dir(dir.string()).size(), builtin_fixtures().size());
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run({"fixtures", "nothing"}).code, cli::kMalformed);
}

TEST(Cli, ByteIdenticalOutput) {
  const CliRun a = run({"fixtures", "torus"}), b = run({"fixtures", "torus"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"invariants", "-", "--json"}, a.out).out, run({"invariants", "-", "--json"}, b.out).out);
}
