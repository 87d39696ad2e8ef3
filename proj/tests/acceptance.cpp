// One line per acceptance criterion; exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "modblob/family.hpp"
#include "support.hpp"

using namespace modblob;
using namespace modblob::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

InvariantReport blob_report(const StrandDiagram& w) { return invariant_report(make_blob(w)); }

Outcome generator_calibration() {
  Outcome o;
  const BlobDiagram k = kidney(1);
  const auto records = classify_tangencies(k);
  int concave = 0, plus = 0;
  for (const auto& r : records) {
    concave += r.concave;
    plus += r.concave && r.polarity == Polarity::Plus;
  }
  o.require(invariant_J(k) == 1, "J(kidney(+1)) != 1");
  o.require(concave == 1 && plus == 1, "kidney(+1) must have exactly one concave tangency, of polarity plus");
  o.require(invariant_J(compose_uplus(k, k)) == 2, "J(2 kappa) != 2");
  o.detail = o.ok ? "J(kappa)=1, one concave plus tangency, J(2 kappa)=2" : o.detail;
  return o;
}

Outcome rho_tables() {
  Outcome o;
  // rows: rho_I, rho_III, rho_II - rho_IV
  const int table[4][3] = {{1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}};
  for (int k = 0; k < 4; ++k) {
    const std::string name = "alpha" + std::to_string(k + 1);
    const RhoVector r = invariant_report(make_blob(fixture(name).word)).rho;
    o.require(r.I == table[k][0], name + " rho_I");
    o.require(r.III == table[k][1], name + " rho_III");
    o.require(r.II - r.IV == table[k][2], name + " rho_II - rho_IV");
  }
  const StrandDiagram torus = fixture("torus").word;
  const InvariantReport t = blob_report(torus);
  o.require(t.rho == RhoVector{1, 1, 1, 1}, "torus rho != (1,1,1,1)");
  o.require(t.J == 0, "torus J != 0");
  o.require(t.max_degree <= 6, "torus fiber degree above 6");
  o.require(trace_components(torus).components.size() == 1, "torus boundary is not one circle");
  if (o.ok) o.detail = "12 table values, torus (1,1,1,1) J=0 d=" + std::to_string(t.max_degree);
  return o;
}

Outcome doodle_generators() {
  Outcome o;
  const std::vector<std::pair<std::string, IotaRho>> expected = {
      {"beta+", {1, 0, 0}}, {"beta-", {0, 1, 0}}, {"betatilde", {0, 0, 1}}, {"betabar", {0, 0, -1}}};
  std::vector<StrandDiagram> gens;
  for (const auto& [name, value] : expected) {
    const StrandDiagram w = fixture(name).word;
    o.require(iota_rho_doodle(w) == value, name + " triple");
    gens.push_back(w);
  }
  // all sums of at most one copy of each generator
  std::set<std::tuple<int, int, long long>> cosets;
  for (unsigned mask = 0; mask < 16; ++mask) {
    StrandDiagram d;
    for (int g = 0; g < 4; ++g)
      if (mask >> g & 1u) d = compose_uplus(d, gens[g]);
    const IotaRho v = iota_rho_doodle(d);
    cosets.insert({v.rho_I_mod2, v.rho_III_mod2, ((v.twist % 2) + 2) % 2});
  }
  o.require(cosets.size() == 8, "only " + std::to_string(cosets.size()) + " cosets realized");
  if (o.ok) o.detail = "four triples reproduced, 8/8 cosets";
  return o;
}

Outcome index_two_law() {
  Outcome o;
  std::mt19937_64 rng(4);
  const int samples = 10000;
  for (int i = 0; i < samples && o.ok; ++i) {
    BlobDiagram b = random_blob(rng, false);
    if (i % 3 == 0) b = compose_star(b, random_blob(rng, false, 4));
    const IotaRho v = iota_rho(b);
    o.require(oracle_in_M(v), "iota_rho outside M on " + word_string(b.doodle));
    o.require(oracle_crossings(b.doodle) % 2 == 0, "odd crossing count on " + word_string(b.doodle));
  }
  if (o.ok) o.detail = std::to_string(samples) + " blobs in M with even crossing count";
  return o;
}

bool m6_pair_ok(CrossingType a, CrossingType b) {
  using T = CrossingType;
  return (a == T::I && b == T::I) || (a == T::III && b == T::III) || (a == T::II && b == T::IV) ||
         (a == T::IV && b == T::II);
}

Outcome move_invariance() {
  Outcome o;
  std::mt19937_64 rng(5);
  int pairs = 0, m6 = 0;
  while (pairs < 10000 && o.ok) {
    const BlobDiagram b = random_blob(rng, false, 6);
    MoveFilter filter;
    filter.max_events = b.doodle.events.size() + 4;
    const auto moves = enumerate_moves(b.doodle, filter);
    if (moves.empty()) continue;
    const Move m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    const BlobDiagram after = apply_move(b, m, filter);
    ++pairs;
    const std::string where = word_string(b.doodle) + " / " + describe(m);
    o.require(oracle_J(after.doodle) == oracle_J(b.doodle), "J changed: " + where);
    o.require(invariant_J(after) == invariant_J(b), "library J changed: " + where);
    o.require(iota_rho(after) == iota_rho(b), "iota_rho changed: " + where);
    o.require(parity_audit(after.doodle).degrees_even == parity_audit(b.doodle).degrees_even,
              "degree parity changed: " + where);
    if (m.kind == MoveKind::M6_CrossPair && m.direction == MoveDirection::Forward) {
      ++m6;
      std::optional<CrossingType> first, second;
      for (const auto& r : classify_crossings_blob(after)) {
        if (r.event_index == m.position) first = r.type;
        if (r.event_index == m.position + 1) second = r.type;
      }
      o.require(first && second && m6_pair_ok(*first, *second), "bad M6 pair types: " + where);
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " moves (" + std::to_string(m6) + " M6 insertions)";
  return o;
}

Outcome normalization() {
  Outcome o;
  int runs = 0;
  for (int n = -3; n <= 3 && o.ok; ++n) {
    for (std::uint64_t seed = 1; seed <= 100 && o.ok; ++seed) {
      const StrandDiagram start = scramble(kidney_word(n), seed, 50);
      const NormalizeResult r = normalize_embedded(make_blob(start));
      ++runs;
      const std::string where = "n=" + std::to_string(n) + " seed=" + std::to_string(seed);
      o.require(r.canonical.doodle.same_word(kidney_word(n)), "wrong canonical word: " + where);
      o.require(r.trace.start.same_word(start), "trace does not start at the input: " + where);
      o.require(replay_trace(r.trace, MoveFilter::embedded()).same_word(r.canonical.doodle),
                "trace does not replay: " + where);
    }
  }
  const NormalizeResult pair = normalize_embedded(compose_uplus(kidney(1), kidney(-1)));
  o.require(pair.canonical.doodle.events.empty(), "kidney(+1) + kidney(-1) did not cancel");
  if (o.ok) o.detail = std::to_string(runs) + " scrambled stacks normalized, kidney pair cancels";
  return o;
}

Outcome commutativity() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000 && o.ok; ++i) {
    const BlobDiagram a = random_blob(rng, false, 6), b = random_blob(rng, false, 6);
    o.require(invariant_report(compose_uplus(a, b)) == invariant_report(compose_uplus(b, a)),
              "reports differ for " + word_string(a.doodle) + " and " + word_string(b.doodle));
  }
  for (int i = 0; i < 1000 && o.ok; ++i) {
    const BlobDiagram a = random_blob(rng, true, 6), b = random_blob(rng, true, 6);
    const auto ab = normalize_embedded(compose_uplus(a, b)).canonical.doodle;
    const auto ba = normalize_embedded(compose_uplus(b, a)).canonical.doodle;
    o.require(ab.same_word(ba), "normal forms differ for " + word_string(a.doodle) + " and " + word_string(b.doodle));
  }
  if (o.ok) o.detail = "1000 immersed pairs, 1000 embedded pairs";
  return o;
}

Outcome analytic_round_trip() {
  Outcome o;
  const Poly one_plus_u4(std::vector<Rational>{1, 0, 0, 0, 1});
  const PolynomialFamily constant = PolynomialFamily::constant(one_plus_u4);
  const PolynomialFamily kappa = kappa_family();
  const PolynomialFamily square = concatenate(kappa, kappa);
  const PolynomialFamily lens = lens_family();
  for (double scale : {1.0, 0.5, 0.25}) {
    SweepConfig c;
    c.root_precision *= scale;
    c.epsilon_theta *= scale;
    const std::string at = " (tolerance x" + std::to_string(scale) + ")";
    o.require(family_class(constant, c) == 0, "constant family class" + at);
    o.require(family_class(kappa, c) == 1, "kappa family class" + at);
    o.require(family_class(square, c) == 2, "kappa squared class" + at);
    o.require(extract_diagram(lens, c).doodle.same_word(parse_word({"B0+", "D0"})), "lens word" + at);
    o.require(extract_diagram(kappa, c).doodle.same_word(extract_diagram(kappa).doodle), "kappa word unstable" + at);
  }
  if (o.ok) o.detail = "classes 0, 1, 2; lens is the disk; stable under halving";
  return o;
}

Outcome topology() {
  Outcome o;
  const TopologyReport disk = topology_report(make_blob(parse_word({"B0+", "D0"})));
  const TopologyReport ann = topology_report(make_blob(parse_word({"B0+", "B1-", "D1", "D0"})));
  o.require(disk.euler_characteristic == 1 && disk.components.size() == 1 && disk.components[0].genus == 0,
            "disk topology");
  o.require(ann.euler_characteristic == 0 && ann.components.size() == 1 && ann.components[0].genus == 0,
            "annulus topology");
  std::mt19937_64 rng(9);
  for (int i = 0; i < 10000 && o.ok; ++i) {
    const BlobDiagram b = random_blob(rng, true);
    for (const auto& c : topology_report(b).components)
      o.require(c.genus == 0, "handle found in " + word_string(b.doodle));
  }
  if (o.ok) o.detail = "disk chi=1, annulus chi=0, 10000 embedded blobs of genus 0";
  return o;
}

Outcome distinctness() {
  Outcome o;
  double worst_prefilter_ms = 0;
  std::size_t explored = 0;
  for (int m = -2; m <= 2; ++m) {
    for (int n = -2; n <= 2; ++n) {
      if (m == n) continue;
      EquivalenceOptions blind;
      blind.depth = 8;
      blind.invariant_prefilter = false;
      const auto r = bounded_equivalence(kidney_word(m), kidney_word(n), blind);
      o.require(!std::holds_alternative<MoveTrace>(r),
                "trace found between kidney(" + std::to_string(m) + ") and kidney(" + std::to_string(n) + ")");
      if (const auto* inc = std::get_if<Inconclusive>(&r)) explored += inc->explored;

      EquivalenceOptions fast;
      fast.depth = 8;
      const auto t0 = std::chrono::steady_clock::now();
      const auto q = bounded_equivalence(kidney_word(m), kidney_word(n), fast);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      worst_prefilter_ms = std::max(worst_prefilter_ms, ms);
      o.require(std::holds_alternative<NotEquivalent>(q), "prefilter did not separate the pair");
    }
  }
  o.require(worst_prefilter_ms < 10, "prefilter took " + std::to_string(worst_prefilter_ms) + " ms");
  if (o.ok) {
    std::ostringstream os;
    os << "20 ordered pairs, no trace at depth 8 (" << explored << " words), prefilter <= " << worst_prefilter_ms
       << " ms";
    o.detail = os.str();
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "generator calibration", 1, generator_calibration},
      {2, "rho tables", 1, rho_tables},
      {3, "doodle generators", 1, doodle_generators},
      {4, "blob index-2 law", 60, index_two_law},
      {5, "move invariance", 60, move_invariance},
      {6, "normalization soundness", 120, normalization},
      {7, "commutativity of uplus", 60, commutativity},
      {8, "analytic round trip", 30, analytic_round_trip},
      {9, "topology", 60, topology},
      {10, "distinctness oracle", 300, distinctness},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s > c.budget_s) {
      o.ok = false;
      o.detail += " (over time budget)";
    }
    failures += !o.ok;
    std::printf("criterion %2d %s: %s [%.2fs] %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, s, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
