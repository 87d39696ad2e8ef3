#include "modblob/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "modblob/error.hpp"

namespace modblob {

const char* to_string(CrossingType type) {
  switch (type) {
    case CrossingType::I: return "I";
    case CrossingType::II: return "II";
    case CrossingType::III: return "III";
    case CrossingType::IV: return "IV";
  }
  return "?";
}

const char* to_string(Polarity polarity) {
  switch (polarity) {
    case Polarity::None: return "none";
    case Polarity::Plus: return "plus";
    case Polarity::Minus: return "minus";
  }
  return "?";
}

bool in_blob_image(const IotaRho& v) {
  const long long twist_parity = ((v.twist % 2) + 2) % 2;
  return (v.rho_I_mod2 + v.rho_III_mod2) % 2 == twist_parity;
}

int coset_index(const IotaRho& v) {
  const int twist_parity = static_cast<int>(((v.twist % 2) + 2) % 2);
  return 4 * v.rho_I_mod2 + 2 * v.rho_III_mod2 + twist_parity;
}

std::vector<TangencyRecord> classify_tangencies(const StrandDiagram& d) {
  std::vector<TangencyRecord> out;
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    if (!e.is_tangency()) continue;
    TangencyRecord rec;
    rec.event_index = static_cast<int>(k);
    rec.kind = e.kind;
    rec.below_count = e.slot;
    rec.concave = e.slot % 2 == 1;
    if (rec.concave) rec.polarity = e.kind == EventKind::Death ? Polarity::Plus : Polarity::Minus;
    out.push_back(rec);
  }
  return out;
}

std::vector<TangencyRecord> classify_tangencies(const BlobDiagram& blob) { return classify_tangencies(blob.doodle); }

long long invariant_J(const std::vector<TangencyRecord>& records) {
  long long j = 0;
  for (const auto& r : records) {
    if (r.polarity == Polarity::Plus) ++j;
    if (r.polarity == Polarity::Minus) --j;
  }
  return j;
}

long long invariant_J(const BlobDiagram& blob) { return invariant_J(classify_tangencies(blob)); }

std::vector<CrossingRecord> classify_crossings_blob(const BlobDiagram& blob) {
  const StrandDiagram& d = blob.doodle;
  if (!d.oriented()) throw Error(ErrorCode::UnorientedInput, "blob boundary must be oriented");
  const Replay r = replay(d);
  std::vector<CrossingRecord> out;
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    if (e.kind != EventKind::Cross) continue;
    const auto& pre = r.slabs[k];
    int below = 0;
    for (int j = 0; j < e.slot; ++j) below += pre[j].dir;
    const int lo = pre[e.slot].dir;
    const int hi = pre[e.slot + 1].dir;
    const int before = below + lo;
    const int after = below + hi;
    const int above = below + lo + hi;
    CrossingRecord rec;
    rec.event_index = static_cast<int>(k);
    rec.sector_data = {below, before, after, above};
    const int top = std::max({below, before, after, above});
    if (above == top && lo + hi == 2) rec.type = CrossingType::I;
    else if (below == top && lo + hi == -2) rec.type = CrossingType::III;
    else if (after == top) rec.type = CrossingType::II;
    else rec.type = CrossingType::IV;
    out.push_back(rec);
  }
  return out;
}

std::vector<CrossingRecord> classify_crossings_doodle(const StrandDiagram& d) {
  if (!d.oriented()) throw Error(ErrorCode::UnorientedInput, "doodle crossings need an oriented doodle");
  const Replay r = replay(d);
  std::vector<CrossingRecord> out;
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    if (e.kind != EventKind::Cross) continue;
    const auto& pre = r.slabs[k];
    // The strand at slot i rises to i+1; the one at i+1 falls.
    const int up = pre[e.slot].dir;
    const int down = pre[e.slot + 1].dir;
    CrossingRecord rec;
    rec.event_index = static_cast<int>(k);
    rec.sector_data = {up, down, 0, 0};
    if (up > 0 && down < 0) rec.type = CrossingType::I;
    else if (up < 0 && down > 0) rec.type = CrossingType::III;
    else if (up > 0) rec.type = CrossingType::II;
    else rec.type = CrossingType::IV;
    out.push_back(rec);
  }
  return out;
}

RhoVector rho(const std::vector<CrossingRecord>& records) {
  RhoVector v;
  for (const auto& r : records) {
    switch (r.type) {
      case CrossingType::I: ++v.I; break;
      case CrossingType::II: ++v.II; break;
      case CrossingType::III: ++v.III; break;
      case CrossingType::IV: ++v.IV; break;
    }
  }
  return v;
}

IotaRho iota_rho(const RhoVector& v) { return {v.I % 2, v.III % 2, static_cast<long long>(v.II) - v.IV}; }

IotaRho iota_rho(const BlobDiagram& blob) { return iota_rho(rho(classify_crossings_blob(blob))); }

IotaRho iota_rho_doodle(const StrandDiagram& doodle) { return iota_rho(rho(classify_crossings_doodle(doodle))); }

long long complexity(const BlobDiagram& blob) {
  const auto records = classify_tangencies(blob);
  const long long c = std::count_if(records.begin(), records.end(), [](const TangencyRecord& r) { return r.concave; });
  if (c < std::llabs(invariant_J(records))) throw Error(ErrorCode::InvalidDiagram, "complexity below |J|");
  return c;
}

// ---------------------------------------------------------------------------
// Topology of embedded blobs

namespace {

struct DisjointSets {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

TopologyReport topology_report(const BlobDiagram& blob) {
  if (!blob.embedded()) throw Error(ErrorCode::NotEmbedded, "topology report needs an embedded blob");
  const StrandDiagram& d = blob.doodle;
  const Replay r = replay(d);
  const FaceMap faces = blob.faces.empty() ? face_multiplicities(d) : blob.faces;
  const std::size_t n = d.events.size();
  const bool cycle = !d.base.is_strip();

  // 2-cells: filled intervals of each slab.
  std::vector<std::vector<int>> cell(r.slabs.size());
  DisjointSets sets;
  for (std::size_t k = 0; k < r.slabs.size(); ++k) {
    cell[k].assign(faces[k].size(), -1);
    for (std::size_t j = 0; j < faces[k].size(); ++j)
      if (faces[k][j] > 0) cell[k][j] = sets.add();
  }
  const int cell_count = static_cast<int>(sets.parent.size());

  struct Counted {
    int cell;  // representative cell, resolved to a component later
    int dv, de;
  };
  std::vector<Counted> tallies;
  for (int c = 0; c < cell_count; ++c) tallies.push_back({c, 0, 0});  // faces

  // Strand segment (slab k, strand j) borders intervals j and j+1.
  auto segment_cell = [&](std::size_t k, std::size_t j) {
    return cell[k][j] >= 0 ? cell[k][j] : cell[k][j + 1];
  };
  for (std::size_t k = 0; k < r.slabs.size(); ++k)
    for (std::size_t j = 0; j < r.slabs[k].size(); ++j) tallies.push_back({segment_cell(k, j), 0, 1});

  // Fibers: one per event, plus the wrap fiber on the cylinder which joins
  // slab n back to slab 0.  Points are listed bottom-up together with the
  // left/right interval indices of the segment above each point.
  auto process_fiber = [&](std::size_t left_slab, std::size_t right_slab, const Event* e) {
    const auto& pre = r.slabs[left_slab];
    const int s = static_cast<int>(pre.size());
    struct Point {
      int delta;
      int left_above;   // interval index above the point in the left slab
      int right_above;  // interval index above the point in the right slab
      int strand_cell;  // a cell adjacent to an incident strand segment
    };
    std::vector<Point> pts;
    if (!e) {
      for (int j = 0; j < s; ++j)
        pts.push_back({pre[j].dir, j + 1, j + 1, segment_cell(left_slab, j)});
    } else {
      const int i = e->slot;
      for (int j = 0; j < i; ++j) pts.push_back({pre[j].dir, j + 1, j + 1, segment_cell(left_slab, j)});
      switch (e->kind) {
        case EventKind::Birth:
          pts.push_back({0, i, i + 2, segment_cell(right_slab, i)});
          for (int j = i; j < s; ++j) pts.push_back({pre[j].dir, j + 1, j + 3, segment_cell(left_slab, j)});
          break;
        case EventKind::Death:
          pts.push_back({0, i + 2, i, segment_cell(left_slab, i)});
          for (int j = i + 2; j < s; ++j) pts.push_back({pre[j].dir, j + 1, j - 1, segment_cell(left_slab, j)});
          break;
        case EventKind::Cross:
          throw Error(ErrorCode::NotEmbedded, "crossing in an embedded blob");
      }
    }
    int m = 0;
    for (const auto& p : pts) {
      tallies.push_back({p.strand_cell, 1, 0});
      m += p.delta;
      const bool last = &p == &pts.back();
      if (m > 0 && !last) {
        const int lc = cell[left_slab][p.left_above];
        const int rc = cell[right_slab][p.right_above];
        tallies.push_back({lc, 0, 1});
        sets.join(lc, rc);
      }
    }
  };
  for (std::size_t k = 0; k < n; ++k) process_fiber(k, k + 1, &d.events[k]);
  if (cycle) process_fiber(n, 0, nullptr);

  std::vector<int> comp_of_root(cell_count, -1);
  TopologyReport report;
  auto component = [&](int c) {
    int root = sets.find(c);
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<int>(report.components.size());
      report.components.emplace_back();
    }
    return comp_of_root[root];
  };
  for (int c = 0; c < cell_count; ++c) component(c);
  for (std::size_t t = 0; t < tallies.size(); ++t) {
    const auto& tally = tallies[t];
    const int sign_face = t < static_cast<std::size_t>(cell_count) ? 1 : 0;
    report.components[component(tally.cell)].euler_characteristic += tally.dv - tally.de + sign_face;
  }

  const ComponentReport loops = trace_components(d);
  for (const auto& loop : loops.components) {
    // Locate one strand segment of the loop to find the filled side.
    int owner = -1;
    for (std::size_t k = 0; k < r.slabs.size() && owner < 0; ++k)
      for (std::size_t j = 0; j < r.slabs[k].size(); ++j)
        if (loops.arc_component[r.slabs[k][j].arc] == loops.arc_component[loop.arcs.front()]) {
          owner = component(segment_cell(k, j));
          break;
        }
    if (owner >= 0) report.components[owner].boundary_circles += 1;
  }
  for (auto& c : report.components) {
    c.genus = (2 - c.boundary_circles - c.euler_characteristic) / 2;
    report.euler_characteristic += c.euler_characteristic;
    report.boundary_circles += c.boundary_circles;
    if (c.genus != 0) throw Error(ErrorCode::InvalidDiagram, "embedded blob component with a handle");
  }
  return report;
}

ParityAudit parity_audit(const StrandDiagram& d) {
  ParityAudit audit;
  audit.crossing_count = d.crossing_count();
  int s = d.base.is_strip() ? 0 : d.base.wrap_width;
  if (s % 2 != 0) audit.degrees_even = false;
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    const int max_slot = e.kind == EventKind::Birth ? s : s - 2;
    if (e.slot < 0 || e.slot > max_slot) {
      audit.failures.push_back("event " + std::to_string(k) + " out of range");
      break;
    }
    s += e.produced() - e.consumed();
    if (s % 2 != 0) audit.degrees_even = false;
  }
  if (audit.crossing_count % 2 != 0) audit.failures.push_back("odd crossing count");
  if (!audit.degrees_even) audit.failures.push_back("odd fiber degree");
  audit.ok = audit.failures.empty();
  return audit;
}

InvariantReport invariant_report(const BlobDiagram& blob) {
  InvariantReport rep;
  rep.blob_mode = true;
  const auto tangencies = classify_tangencies(blob);
  rep.J = invariant_J(tangencies);
  rep.c_plus = complexity(blob);
  rep.rho = rho(classify_crossings_blob(blob));
  rep.iota = iota_rho(rep.rho);
  rep.crossing_count_parity = rep.rho.total() % 2;
  rep.max_degree = fiber_patterns(blob.doodle).max_degree;
  rep.parity_ok = parity_audit(blob.doodle).ok;
  return rep;
}

InvariantReport invariant_report_doodle(const StrandDiagram& doodle) {
  InvariantReport rep;
  rep.blob_mode = false;
  const auto tangencies = classify_tangencies(doodle);
  rep.J = invariant_J(tangencies);
  rep.c_plus = std::count_if(tangencies.begin(), tangencies.end(), [](const TangencyRecord& r) { return r.concave; });
  rep.rho = rho(classify_crossings_doodle(doodle));
  rep.iota = iota_rho(rep.rho);
  rep.crossing_count_parity = rep.rho.total() % 2;
  rep.max_degree = fiber_patterns(doodle).max_degree;
  rep.parity_ok = parity_audit(doodle).ok;
  return rep;
}

}  // namespace modblob
