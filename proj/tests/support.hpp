#pragma once

// Random diagrams and small oracles shared by the test binaries.  The
// oracles here recompute quantities straight from the event word and do not
// call into the library's invariant code.

#include <random>
#include <vector>

#include "modblob/diagram.hpp"
#include "modblob/fixtures.hpp"
#include "modblob/invariants.hpp"
#include "modblob/rewriting.hpp"

namespace modblob::testing {

inline StrandDiagram parse_word(std::initializer_list<const char*> tokens) {
  StrandDiagram d;
  for (std::string t : tokens) {
    const char kind = t[0];
    std::string rest = t.substr(1);
    std::optional<bool> bit;
    if (!rest.empty() && (rest.back() == '+' || rest.back() == '-')) {
      bit = rest.back() == '+';
      rest.pop_back();
    }
    const int slot = std::stoi(rest);
    if (kind == 'B') d.events.push_back(Event::birth(slot, bit));
    if (kind == 'D') d.events.push_back(Event::death(slot));
    if (kind == 'X') d.events.push_back(Event::cross(slot));
  }
  return d;
}

// #(concave deaths) - #(concave births), concave meaning an odd number of
// strands below the tangency point.
inline long long oracle_J(const StrandDiagram& d) {
  long long j = 0;
  for (const auto& e : d.events) {
    if (e.kind == EventKind::Cross || e.slot % 2 == 0) continue;
    j += e.kind == EventKind::Death ? 1 : -1;
  }
  return j;
}

inline long long oracle_concave(const StrandDiagram& d) {
  long long c = 0;
  for (const auto& e : d.events)
    if (e.kind != EventKind::Cross && e.slot % 2 == 1) ++c;
  return c;
}

inline int oracle_crossings(const StrandDiagram& d) {
  int c = 0;
  for (const auto& e : d.events) c += e.kind == EventKind::Cross;
  return c;
}

// Largest stack height, which bounds the fiber degree away from events.
inline int oracle_max_stack(const StrandDiagram& d) {
  int n = d.base.wrap_width, best = n;
  for (const auto& e : d.events) {
    n += e.produced() - e.consumed();
    best = std::max(best, n);
  }
  return best;
}

// (a, b, c) lies in span{(1,0,1), (0,1,1), (0,0,2)} iff c = a + b mod 2.
inline bool oracle_in_M(const IotaRho& v) {
  const long long c = ((v.twist % 2) + 2) % 2;
  return c == (v.rho_I_mod2 + v.rho_III_mod2) % 2;
}

inline std::vector<BlobDiagram> blob_seeds() {
  std::vector<BlobDiagram> out;
  for (const auto& f : builtin_fixtures())
    if (f.blob) out.push_back(make_blob(f.word));
  out.push_back(kidney(2));
  out.push_back(kidney(-2));
  return out;
}

inline std::vector<BlobDiagram> embedded_seeds() {
  std::vector<BlobDiagram> out;
  for (int n = -2; n <= 2; ++n)
    if (n != 0) out.push_back(kidney(n));
  out.push_back(make_blob(parse_word({"B0+", "D0"})));
  out.push_back(make_blob(parse_word({"B0+", "B1-", "D1", "D0"})));
  out.push_back(make_blob(parse_word({"B0+", "B2+", "D1", "D0"})));
  return out;
}

/// Composes one to three seeds side by side (some reflected) and scrambles
/// the result with legal moves.
inline BlobDiagram random_blob(std::mt19937_64& rng, bool embedded, int max_steps = 10) {
  static const std::vector<BlobDiagram> general = blob_seeds();
  static const std::vector<BlobDiagram> emb = embedded_seeds();
  const auto& pool = embedded ? emb : general;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> count(1, 3), coin(0, 1), steps(0, max_steps);
  BlobDiagram b = pool[pick(rng)];
  const int k = count(rng);
  for (int i = 1; i < k; ++i) {
    BlobDiagram next = pool[pick(rng)];
    if (coin(rng)) next = negate(next);
    b = compose_uplus(b, next);
  }
  MoveFilter filter = embedded ? MoveFilter::embedded() : MoveFilter{};
  filter.max_events = b.doodle.events.size() + 8;
  const StrandDiagram w = scramble(b.doodle, rng(), steps(rng), filter);
  return make_blob(w);
}

}  // namespace modblob::testing
