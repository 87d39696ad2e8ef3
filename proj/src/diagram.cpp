#include "modblob/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "modblob/error.hpp"

namespace modblob {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Birth: return "birth";
    case EventKind::Death: return "death";
    case EventKind::Cross: return "cross";
  }
  return "?";
}

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::SlotRange: return "slot-range";
    case Rule::FinalStack: return "final-stack";
    case Rule::StripWrapWidth: return "strip-wrap-width";
    case Rule::WrapDirCount: return "wrap-dir-count";
    case Rule::ThetaOrder: return "theta-order";
    case Rule::ThetaCollision: return "theta-collision";
    case Rule::OrientBitMissing: return "orient-bit-missing";
    case Rule::OrientBitOnNonBirth: return "orient-bit-on-non-birth";
    case Rule::DeathDirections: return "death-directions";
    case Rule::WrapOrientation: return "wrap-orientation";
    case Rule::Unoriented: return "unoriented";
    case Rule::NegativeFace: return "negative-face";
    case Rule::UnboundedFace: return "unbounded-face";
    case Rule::FaceMismatch: return "face-mismatch";
    case Rule::OddDegree: return "odd-degree";
    case Rule::OddCrossings: return "odd-crossings";
  }
  return "?";
}

bool StrandDiagram::oriented() const {
  for (const auto& e : events)
    if (e.kind == EventKind::Birth && !e.orient_bit) return false;
  return base.is_strip() || static_cast<int>(wrap_dirs.size()) == base.wrap_width;
}

bool StrandDiagram::partially_oriented() const {
  if (!wrap_dirs.empty()) return true;
  return std::any_of(events.begin(), events.end(), [](const Event& e) { return e.orient_bit.has_value(); });
}

bool StrandDiagram::same_word(const StrandDiagram& other) const {
  if (!(base == other.base) || wrap_dirs != other.wrap_dirs || events.size() != other.events.size()) return false;
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& a = events[k];
    const auto& b = other.events[k];
    if (a.kind != b.kind || a.slot != b.slot || a.orient_bit != b.orient_bit) return false;
  }
  return true;
}

StrandDiagram StrandDiagram::without_theta() const {
  StrandDiagram out = *this;
  for (auto& e : out.events) e.theta.reset();
  return out;
}

int StrandDiagram::crossing_count() const {
  return static_cast<int>(
      std::count_if(events.begin(), events.end(), [](const Event& e) { return e.kind == EventKind::Cross; }));
}

bool BlobDiagram::embedded() const {
  if (doodle.crossing_count() != 0) return false;
  for (const auto& row : faces)
    for (int m : row)
      if (m != 0 && m != 1) return false;
  return true;
}

int FiberPattern::degree() const { return std::accumulate(entries.begin(), entries.end(), 0); }

int FiberPattern::twos() const { return static_cast<int>(std::count(entries.begin(), entries.end(), 2)); }

bool ValidationReport::has(Rule rule) const {
  return std::any_of(violations.begin(), violations.end(), [rule](const Violation& v) { return v.rule == rule; });
}

namespace {

struct ReplayOutcome {
  Replay replay;
  std::vector<Violation> violations;
  bool complete = true;  // every event was in range
};

void first_of_rule(std::vector<Violation>& out, Rule rule, int index, std::string message) {
  for (const auto& v : out)
    if (v.rule == rule) return;
  out.push_back({rule, index, std::move(message)});
}

ReplayOutcome replay_collect(const StrandDiagram& d) {
  ReplayOutcome out;
  Replay& r = out.replay;
  const bool oriented = d.oriented();

  std::vector<StrandState> stack;
  const int wrap = d.base.is_strip() ? 0 : d.base.wrap_width;
  for (int j = 0; j < wrap; ++j) {
    int dir = oriented ? (d.wrap_dirs[j] ? 1 : -1) : 0;
    stack.push_back({r.arc_count++, dir});
    r.arc_dir.push_back(dir);
  }
  r.slabs.push_back(stack);

  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    const int s = static_cast<int>(stack.size());
    const int idx = static_cast<int>(k);
    const int max_slot = e.kind == EventKind::Birth ? s : s - 2;
    if (e.slot < 0 || e.slot > max_slot) {
      std::ostringstream msg;
      msg << to_string(e.kind) << " at slot " << e.slot << " on a stack of " << s;
      first_of_rule(out.violations, Rule::SlotRange, idx, msg.str());
      out.complete = false;
      return out;
    }
    switch (e.kind) {
      case EventKind::Birth: {
        int lower = 0;
        if (oriented) lower = *e.orient_bit ? 1 : -1;
        StrandState a{r.arc_count++, lower};
        StrandState b{r.arc_count++, -lower};
        r.arc_dir.push_back(a.dir);
        r.arc_dir.push_back(b.dir);
        stack.insert(stack.begin() + e.slot, {a, b});
        break;
      }
      case EventKind::Death: {
        if (oriented && stack[e.slot].dir == stack[e.slot + 1].dir)
          first_of_rule(out.violations, Rule::DeathDirections, idx, "death joins two strands of equal direction");
        stack.erase(stack.begin() + e.slot, stack.begin() + e.slot + 2);
        break;
      }
      case EventKind::Cross:
        std::swap(stack[e.slot], stack[e.slot + 1]);
        break;
    }
    r.slabs.push_back(stack);
  }

  if (static_cast<int>(stack.size()) != wrap) {
    std::ostringstream msg;
    msg << "final stack has " << stack.size() << " strands, expected " << wrap;
    first_of_rule(out.violations, Rule::FinalStack, -1, msg.str());
  } else if (oriented) {
    for (int j = 0; j < wrap; ++j)
      if (stack[j].dir != r.slabs.front()[j].dir) {
        first_of_rule(out.violations, Rule::WrapOrientation, -1, "strand direction changes across the wrap fiber");
        break;
      }
  }
  return out;
}

}  // namespace

Replay replay(const StrandDiagram& diagram) {
  auto out = replay_collect(diagram);
  for (const auto& v : out.violations)
    if (v.rule == Rule::SlotRange || v.rule == Rule::FinalStack) throw Error(ErrorCode::InvalidDiagram, v.message);
  return std::move(out.replay);
}

ValidationReport validate(const StrandDiagram& d) {
  ValidationReport report;
  auto& v = report.violations;

  if (d.base.is_strip() && d.base.wrap_width != 0)
    v.push_back({Rule::StripWrapWidth, -1, "strip diagrams must have wrap_width 0"});
  if (!d.base.is_strip() && d.base.wrap_width < 0)
    v.push_back({Rule::StripWrapWidth, -1, "negative wrap_width"});
  if (!d.wrap_dirs.empty() && static_cast<int>(d.wrap_dirs.size()) != (d.base.is_strip() ? 0 : d.base.wrap_width))
    v.push_back({Rule::WrapDirCount, -1, "wrap_dirs does not match wrap_width"});

  const Rational* last = nullptr;
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    const int idx = static_cast<int>(k);
    if (e.theta) {
      if (last && *e.theta == *last)
        first_of_rule(v, Rule::ThetaCollision, idx,
                      "two events on one fiber; perturb theta to separate them");
      else if (last && *e.theta < *last)
        first_of_rule(v, Rule::ThetaOrder, idx, "theta decorations must increase");
      last = &*e.theta;
    }
    if (e.kind != EventKind::Birth && e.orient_bit)
      first_of_rule(v, Rule::OrientBitOnNonBirth, idx, "orient_bit is only meaningful on births");
  }
  if (d.partially_oriented() && !d.oriented()) {
    int missing = -1;
    for (std::size_t k = 0; k < d.events.size(); ++k)
      if (d.events[k].kind == EventKind::Birth && !d.events[k].orient_bit) {
        missing = static_cast<int>(k);
        break;
      }
    v.push_back({Rule::OrientBitMissing, missing, "orientation data is incomplete"});
  }

  bool structural_ok = true;
  for (const auto& x : v)
    if (x.rule == Rule::StripWrapWidth || x.rule == Rule::WrapDirCount) structural_ok = false;
  if (structural_ok) {
    auto outcome = replay_collect(d);
    v.insert(v.end(), outcome.violations.begin(), outcome.violations.end());
  }
  return report;
}

ValidationReport validate(const BlobDiagram& blob) {
  ValidationReport report = validate(blob.doodle);
  auto& v = report.violations;
  if (!report.ok()) return report;
  if (!blob.doodle.oriented()) {
    v.push_back({Rule::Unoriented, -1, "blob boundaries must be oriented"});
    return report;
  }
  const Replay r = replay(blob.doodle);
  FaceMap computed;
  for (std::size_t k = 0; k < r.slabs.size(); ++k) {
    const auto& slab = r.slabs[k];
    std::vector<int> row{0};
    for (const auto& s : slab) row.push_back(row.back() + s.dir);
    const int locus = k == 0 ? 0 : static_cast<int>(k) - 1;
    for (int m : row)
      if (m < 0) {
        first_of_rule(v, Rule::NegativeFace, locus, "negative face multiplicity");
        break;
      }
    if (row.back() != 0) first_of_rule(v, Rule::UnboundedFace, locus, "top face must have multiplicity 0");
    computed.push_back(std::move(row));
  }
  if (!blob.faces.empty() && blob.faces != computed)
    v.push_back({Rule::FaceMismatch, -1, "face multiplicities disagree with the oriented boundary"});

  for (const auto& [locus, pattern] : fiber_patterns(blob.doodle).patterns)
    if (pattern.degree() % 2 != 0) {
      first_of_rule(v, Rule::OddDegree, locus.index, "odd fiber degree");
      break;
    }
  if (blob.doodle.crossing_count() % 2 != 0)
    v.push_back({Rule::OddCrossings, -1, "a boundary of an immersed surface has an even number of crossings"});
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

ComponentReport trace_components(const StrandDiagram& d) {
  const Replay r = replay(d);
  UnionFind uf(r.arc_count);
  const bool oriented = d.oriented();

  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    const auto& post = r.slabs[k + 1];
    const auto& pre = r.slabs[k];
    if (e.kind == EventKind::Birth) {
      uf.join(post[e.slot].arc, post[e.slot + 1].arc);
    } else if (e.kind == EventKind::Death) {
      if (oriented && pre[e.slot].dir == pre[e.slot + 1].dir)
        throw Error(ErrorCode::OrientationInconsistent,
                    "event " + std::to_string(k) + " joins strands of equal direction");
      uf.join(pre[e.slot].arc, pre[e.slot + 1].arc);
    }
  }
  const auto& first = r.slabs.front();
  const auto& last = r.slabs.back();
  for (std::size_t j = 0; j < first.size(); ++j) {
    if (oriented && first[j].dir != last[j].dir)
      throw Error(ErrorCode::OrientationInconsistent, "direction flips across the wrap fiber");
    uf.join(first[j].arc, last[j].arc);
  }

  ComponentReport report;
  report.arc_component.assign(r.arc_count, -1);
  std::vector<int> root_to_component(r.arc_count, -1);
  for (int a = 0; a < r.arc_count; ++a) {
    int root = uf.find(a);
    if (root_to_component[root] < 0) {
      root_to_component[root] = static_cast<int>(report.components.size());
      report.components.emplace_back();
    }
    report.arc_component[a] = root_to_component[root];
    report.components[root_to_component[root]].arcs.push_back(a);
  }
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    const auto& slab = e.kind == EventKind::Birth ? r.slabs[k + 1] : r.slabs[k];
    int c1 = report.arc_component[slab[e.slot].arc];
    int c2 = report.arc_component[slab[e.slot + 1].arc];
    report.components[c1].events.push_back(static_cast<int>(k));
    if (c2 != c1) report.components[c2].events.push_back(static_cast<int>(k));
  }
  return report;
}

FaceMap face_multiplicities(const StrandDiagram& d) {
  if (!d.oriented()) throw Error(ErrorCode::UnorientedInput, "face multiplicities need an oriented diagram");
  const Replay r = replay(d);
  FaceMap faces;
  for (const auto& slab : r.slabs) {
    std::vector<int> row{0};
    for (const auto& s : slab) {
      row.push_back(row.back() + s.dir);
      if (row.back() < 0) throw Error(ErrorCode::NotFillable, "negative face multiplicity");
    }
    if (row.back() != 0) throw Error(ErrorCode::NotFillable, "unbounded face around the cylinder");
    faces.push_back(std::move(row));
  }
  return faces;
}

BlobDiagram make_blob(StrandDiagram doodle) {
  FaceMap faces = face_multiplicities(doodle);
  return BlobDiagram{std::move(doodle), std::move(faces)};
}

FiberReport fiber_patterns(const StrandDiagram& d) {
  const Replay r = replay(d);
  FiberReport out;
  auto push = [&](FiberLocus locus, std::vector<int> entries) {
    FiberPattern p{std::move(entries)};
    out.max_degree = std::max(out.max_degree, p.degree());
    out.patterns.emplace_back(locus, std::move(p));
  };
  for (std::size_t k = 0; k <= d.events.size(); ++k) {
    const int s = static_cast<int>(r.slabs[k].size());
    push({FiberLocus::Kind::Slab, static_cast<int>(k)}, std::vector<int>(s, 1));
    if (k == d.events.size()) break;
    const Event& e = d.events[k];
    const int above = e.kind == EventKind::Birth ? s - e.slot : s - e.slot - 2;
    std::vector<int> entries(e.slot, 1);
    entries.push_back(2);
    entries.insert(entries.end(), above, 1);
    push({FiberLocus::Kind::Event, static_cast<int>(k)}, std::move(entries));
  }
  return out;
}

CheckerboardReport checkerboard(const StrandDiagram& d) {
  const Replay r = replay(d);
  CheckerboardReport out;
  for (const auto& slab : r.slabs) {
    std::vector<int> row(slab.size() + 1);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = static_cast<int>(j % 2);
    if (slab.size() % 2 != 0) out.parity_conflict = true;
    out.parity.push_back(std::move(row));
  }
  return out;
}

StrandDiagram boundary(const BlobDiagram& blob) { return blob.doodle; }

namespace {

bool fully_decorated(const StrandDiagram& d) {
  return std::all_of(d.events.begin(), d.events.end(), [](const Event& e) { return e.theta.has_value(); });
}

bool thetas_in_unit_interval(const StrandDiagram& d) {
  return std::all_of(d.events.begin(), d.events.end(),
                     [](const Event& e) { return *e.theta > 0 && *e.theta < 1; });
}

void require_strip(const StrandDiagram& d, const char* op) {
  if (!d.base.is_strip())
    throw Error(ErrorCode::BaseMismatch, std::string(op) + " is only available on the strip");
}

}  // namespace

StrandDiagram compose_uplus(const StrandDiagram& a, const StrandDiagram& b) {
  require_strip(a, "uplus");
  require_strip(b, "uplus");
  StrandDiagram out;
  out.base = BaseSpace::strip();
  out.events = a.events;
  out.events.insert(out.events.end(), b.events.begin(), b.events.end());

  if (fully_decorated(a) && fully_decorated(b) && !a.events.empty() && !b.events.empty()) {
    const std::size_t na = a.events.size();
    if (thetas_in_unit_interval(a) && thetas_in_unit_interval(b)) {
      for (std::size_t k = 0; k < out.events.size(); ++k) {
        Rational t = *out.events[k].theta / 2;
        if (k >= na) t += Rational(1, 2);
        out.events[k].theta = t;
      }
    } else {
      Rational shift = *a.events.back().theta - *b.events.front().theta + 1;
      for (std::size_t k = na; k < out.events.size(); ++k) out.events[k].theta = *out.events[k].theta + shift;
    }
  } else {
    for (auto& e : out.events) e.theta.reset();
  }
  return out;
}

BlobDiagram compose_uplus(const BlobDiagram& a, const BlobDiagram& b) {
  return make_blob(compose_uplus(a.doodle, b.doodle));
}

StrandDiagram compose_star(const StrandDiagram& a, const StrandDiagram& b) {
  if (a.base.kind != b.base.kind) throw Error(ErrorCode::BaseMismatch, "star needs diagrams over the same base");
  const Replay ra = replay(a);
  StrandDiagram out;
  out.base = a.base;
  out.base.wrap_width = a.base.wrap_width + b.base.wrap_width;
  if (!a.base.is_strip()) {
    if (a.oriented() && b.oriented()) {
      out.wrap_dirs = a.wrap_dirs;
      out.wrap_dirs.insert(out.wrap_dirs.end(), b.wrap_dirs.begin(), b.wrap_dirs.end());
    }
  }

  bool by_theta = fully_decorated(a) && fully_decorated(b);
  if (by_theta) {
    // Equal decorations would put two events on one fiber.
    for (const auto& ea : a.events)
      for (const auto& eb : b.events)
        if (*ea.theta == *eb.theta) by_theta = false;
  }

  std::size_t ia = 0, ib = 0;
  while (ia < a.events.size() || ib < b.events.size()) {
    bool take_a;
    if (ia == a.events.size()) take_a = false;
    else if (ib == b.events.size()) take_a = true;
    else take_a = !by_theta || *a.events[ia].theta < *b.events[ib].theta;
    if (take_a) {
      out.events.push_back(a.events[ia++]);
    } else {
      Event e = b.events[ib++];
      e.slot += static_cast<int>(ra.slabs[ia].size());
      out.events.push_back(e);
    }
  }
  if (!by_theta)
    for (auto& e : out.events) e.theta.reset();
  return out;
}

BlobDiagram compose_star(const BlobDiagram& a, const BlobDiagram& b) {
  return make_blob(compose_star(a.doodle, b.doodle));
}

StrandDiagram negate(const StrandDiagram& a) {
  require_strip(a, "negate");
  const Replay r = replay(a);
  const bool oriented = a.oriented();
  StrandDiagram out;
  out.base = a.base;
  const std::size_t n = a.events.size();
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t k = n - 1 - step;
    const Event& e = a.events[k];
    Event flipped;
    flipped.slot = e.slot;
    switch (e.kind) {
      case EventKind::Birth: flipped.kind = EventKind::Death; break;
      case EventKind::Cross: flipped.kind = EventKind::Cross; break;
      case EventKind::Death:
        flipped.kind = EventKind::Birth;
        if (oriented) flipped.orient_bit = r.slabs[k][e.slot].dir > 0;
        break;
    }
    if (e.theta) flipped.theta = Rational(1) - *e.theta;
    out.events.push_back(flipped);
  }
  return out;
}

BlobDiagram negate(const BlobDiagram& a) {
  BlobDiagram out{negate(a.doodle), {}};
  out.faces.assign(a.faces.rbegin(), a.faces.rend());
  return out;
}

std::string word_string(const StrandDiagram& d) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < d.events.size(); ++k) {
    const Event& e = d.events[k];
    if (k) os << ' ';
    os << (e.kind == EventKind::Birth ? 'B' : e.kind == EventKind::Death ? 'D' : 'X') << e.slot;
    if (e.orient_bit) os << (*e.orient_bit ? '+' : '-');
  }
  os << ']';
  return os.str();
}

}  // namespace modblob
