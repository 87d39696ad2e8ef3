#include "modblob/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "modblob/error.hpp"

namespace modblob {

const char* to_string(CurveViolation::Kind kind) {
  switch (kind) {
    case CurveViolation::Kind::NotClosed: return "NotClosed";
    case CurveViolation::Kind::Irregular: return "Irregular";
    case CurveViolation::Kind::OutOfStrip: return "OutOfStrip";
    case CurveViolation::Kind::HigherTangency: return "HigherTangency";
    case CurveViolation::Kind::TriplePoint: return "TriplePoint";
    case CurveViolation::Kind::NonTransversalCrossing: return "NonTransversalCrossing";
    case CurveViolation::Kind::SharedTangency: return "SharedTangency";
  }
  return "?";
}

namespace {

using Kind = CurveViolation::Kind;

struct Interval {
  double lo, hi;
};

Interval horner(const std::vector<double>& c, Interval t) {
  Interval acc{0, 0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const double p[4] = {acc.lo * t.lo, acc.lo * t.hi, acc.hi * t.lo, acc.hi * t.hi};
    acc = {*std::min_element(p, p + 4) + *it, *std::max_element(p, p + 4) + *it};
  }
  const double pad = 1e-12 * (1 + std::abs(acc.lo) + std::abs(acc.hi));
  return {acc.lo - pad, acc.hi + pad};
}

double eval(const std::vector<double>& c, double t) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<double> to_doubles(const Poly& p) {
  std::vector<double> out;
  for (const auto& c : p.coefficients()) out.push_back(c.get_d());
  return out;
}

std::vector<double> diff(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t k = 1; k < c.size(); ++k) out.push_back(c[k] * static_cast<double>(k));
  return out;
}

struct Piece {
  int curve, index;
  const CurvePiece* src;
  std::vector<double> th, u, dth, du;
};

struct Tangency {
  int piece;
  Rational t;        // exact-ish local parameter
  Rational theta;
  double u;
  bool birth;
  bool lower_plus;   // births: the lower newborn strand runs toward +theta
};

struct Crossing {
  int a, b;
  double ta, tb;
  double theta, u;
  bool transversal;
};

Rational rounded(double x) {
  constexpr long scale = 1000000000000L;
  Rational r(static_cast<long>(std::llround(x * static_cast<double>(scale))), scale);
  r.canonicalize();
  return r;
}

bool overlaps(Interval a, Interval b) { return a.lo <= b.hi && b.lo <= a.hi; }
bool excludes_zero(Interval a) { return a.lo > 0 || a.hi < 0; }

class Sweep {
 public:
  Sweep(const ParametricCurveSet& set, const SweepConfig& config) : set_(set), config_(config) {
    for (std::size_t c = 0; c < set.curves.size(); ++c) {
      const auto& curve = set.curves[c];
      first_piece_.push_back(static_cast<int>(pieces_.size()));
      for (std::size_t k = 0; k < curve.pieces.size(); ++k) {
        Piece p{static_cast<int>(c), static_cast<int>(k), &curve.pieces[k], to_doubles(curve.pieces[k].theta),
                to_doubles(curve.pieces[k].u), {}, {}};
        p.dth = diff(p.th);
        p.du = diff(p.u);
        pieces_.push_back(std::move(p));
      }
    }
  }

  std::vector<CurveViolation> violations;
  std::vector<Tangency> tangencies;
  std::vector<Crossing> crossings;

  void run() {
    check_structure();
    if (!violations.empty()) return;
    find_tangencies();
    find_crossings();
    check_crossings();
  }

  struct Exclusion {
    int piece;
    double t;
  };

  // Strands on the fiber theta = th strictly below u.  Points on the excluded
  // branches are skipped; points within tol of u are counted in *near.
  int strands_below(const Rational& th, double u, double tol, const std::vector<Exclusion>& skip,
                    int* near = nullptr) const {
    int below = 0, close = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      const Poly f = p.src->theta - Poly::constant(th);
      if (f.is_zero()) continue;
      // Local parameter in [0, 1); the point at t = 1 belongs to the next piece.
      std::vector<double> ts;
      if (f.sign_at(Rational(0)) == 0) ts.push_back(0);
      for (auto r : isolate_real_roots(f, Rational(0), Rational(1))) {
        refine_root(square_free(f), r, Rational(1) / Rational(mpz_class(1) << 60));
        ts.push_back(r.mid().get_d());
      }
      for (double t : ts) {
        bool skipped = false;
        for (const auto& e : skip)
          if (e.piece == static_cast<int>(i) && std::abs(e.t - t) < 1e-5) skipped = true;
        if (skipped) continue;
        const double v = eval(p.u, t);
        if (std::abs(v - u) <= tol) {
          ++close;
        } else if (v < u) {
          ++below;
        }
      }
    }
    if (near) *near = close;
    return below;
  }

  std::vector<Exclusion> own_points(const Tangency& t) const { return {{t.piece, t.t.get_d()}}; }
  std::vector<Exclusion> own_points(const Crossing& c) const { return {{c.a, c.ta}, {c.b, c.tb}}; }

 private:
  const ParametricCurveSet& set_;
  const SweepConfig& config_;
  std::vector<Piece> pieces_;
  std::vector<int> first_piece_;
  std::vector<Crossing> contacts_;

  void add(Kind kind, const Piece& p, double t, std::string message) {
    violations.push_back({kind, p.curve, p.index, t, std::move(message)});
  }

  int next_piece(int i) const {
    const Piece& p = pieces_[i];
    const int n = static_cast<int>(set_.curves[p.curve].pieces.size());
    return first_piece_[p.curve] + (p.index + 1) % n;
  }

  void check_structure() {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      const Piece& q = pieces_[next_piece(static_cast<int>(i))];
      const Rational one(1), zero(0);
      if (p.src->theta(one) != q.src->theta(zero) || p.src->u(one) != q.src->u(zero))
        add(Kind::NotClosed, p, 1.0, "piece end does not meet the next piece");
      {
        const Rational a = p.src->theta.derivative()(one), b = p.src->u.derivative()(one);
        const Rational c = q.src->theta.derivative()(zero), d = q.src->u.derivative()(zero);
        if (a * d - b * c != 0 || a * c + b * d <= 0) add(Kind::Irregular, p, 1.0, "corner at the joint");
      }
      const Poly common = gcd(p.src->theta.derivative(), p.src->u.derivative());
      if (common.is_zero() || (common.degree() > 0 && (count_real_roots(common, zero, one) > 0 ||
                                                       common.sign_at(zero) == 0 || common.sign_at(one) == 0)))
        add(Kind::Irregular, p, 0.0, "velocity vanishes");
      if (set_.base == BaseKind::Strip) {
        // theta range: endpoints and interior critical points.
        std::vector<Rational> ts{zero, one};
        const Poly d = p.src->theta.derivative();
        if (!d.is_zero())
          for (auto r : isolate_real_roots(d, zero, one)) {
            refine_root(square_free(d), r, Rational(1, 1 << 30));
            ts.push_back(r.mid());
          }
        for (const auto& t : ts) {
          const Rational v = p.src->theta(t);
          if (v <= 0 || v >= 1) {
            add(Kind::OutOfStrip, p, t.get_d(), "curve leaves the open strip");
            break;
          }
        }
      }
    }
  }

  void find_tangencies() {
    const Rational zero(0), one(1);
    const Rational width = Rational(1) / Rational(mpz_class(1) << 64);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      const Poly d1 = p.src->theta.derivative();
      if (d1.is_zero()) {
        add(Kind::HigherTangency, p, 0, "piece runs along a fiber");
        continue;
      }
      const Poly d2 = d1.derivative();
      // Order >= 3: theta' and theta'' share a root.
      const Poly g = gcd(d1, d2);
      if (g.degree() > 0)
        for (auto r : isolate_real_roots(g, Rational(-1, 1 << 20), one)) {
          refine_root(square_free(g), r, width);
          add(Kind::HigherTangency, p, r.mid().get_d(), "tangency of order >= 3 with a fiber");
        }
      std::vector<RootInterval> roots;
      if (d1.sign_at(zero) == 0) roots.push_back({zero, zero});
      for (auto r : isolate_real_roots(d1, zero, one)) roots.push_back(r);
      for (auto r : roots) {
        refine_root(square_free(d1), r, width);
        const Rational t = r.mid();
        int curvature = d2.sign_at(t);
        if (t == 0) {
          // Joint: both sides must bend the same way.
          const Piece& prev = pieces_[previous_piece(static_cast<int>(i))];
          const int left = prev.src->theta.derivative().derivative().sign_at(one);
          if (left != curvature) curvature = 0;
        }
        if (curvature == 0) {
          if (g.degree() > 0 && g.sign_at(t) == 0) continue;  // reported above
          add(Kind::HigherTangency, p, t.get_d(), "degenerate fiber tangency");
          continue;
        }
        const double du = eval(p.du, t.get_d());
        const bool birth = curvature > 0;
        // Along the parameter theta' goes - to + at a birth; the branch
        // leaving upward (du > 0) is then the '+' one.
        bool lower_plus = du < 0;
        if (set_.curves[p.curve].reversed) lower_plus = !lower_plus;
        tangencies.push_back({static_cast<int>(i), t, p.src->theta(t), eval(p.u, t.get_d()), birth, lower_plus});
      }
    }
  }

  int previous_piece(int i) const {
    const Piece& p = pieces_[i];
    const int n = static_cast<int>(set_.curves[p.curve].pieces.size());
    return first_piece_[p.curve] + (p.index + n - 1) % n;
  }

  bool adjacent(int a, int b) const { return next_piece(a) == b || next_piece(b) == a; }

  void newton(int a, int b, double ta, double tb, Interval ia, Interval ib) {
    const Piece& A = pieces_[a];
    const Piece& B = pieces_[b];
    for (int it = 0; it < 60; ++it) {
      const double f1 = eval(A.th, ta) - eval(B.th, tb);
      const double f2 = eval(A.u, ta) - eval(B.u, tb);
      const double j11 = eval(A.dth, ta), j12 = -eval(B.dth, tb);
      const double j21 = eval(A.du, ta), j22 = -eval(B.du, tb);
      const double det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-300) break;
      const double da = (f1 * j22 - f2 * j12) / det;
      const double db = (j11 * f2 - j21 * f1) / det;
      ta -= da;
      tb -= db;
      if (std::abs(da) + std::abs(db) < 1e-15) break;
    }
    const double slack = 1e-9;
    if (ta < ia.lo - slack || ta > ia.hi + slack || tb < ib.lo - slack || tb > ib.hi + slack) return;
    if (ta < 0 || ta >= 1 || tb < 0 || tb >= 1) {
      // Points at t = 1 belong to the next piece.
      if (ta >= 1 || tb >= 1 || ta < -slack || tb < -slack) return;
      ta = std::max(ta, 0.0);
      tb = std::max(tb, 0.0);
    }
    const double th = eval(A.th, ta), u = eval(A.u, ta);
    if (std::abs(th - eval(B.th, tb)) + std::abs(u - eval(B.u, tb)) > 1e-10) return;
    if (ta > 1 - 1e-9 || tb > 1 - 1e-9) return;  // found again from the next piece at t = 0
    if (ta < 1e-12) ta = 0;
    if (tb < 1e-12) tb = 0;
    // Same curve point reached twice (joints).
    if (a == b && std::abs(ta - tb) < 1e-7) return;
    if (a != b && adjacent(a, b)) {
      const bool a_then_b = next_piece(a) == b;
      const double gap = a_then_b ? (1 - ta) + tb : (1 - tb) + ta;
      if (gap < 1e-7) return;
    }
    for (const auto& c : crossings) {
      const bool same_pair = (c.a == a && c.b == b && std::abs(c.ta - ta) < 1e-8 && std::abs(c.tb - tb) < 1e-8) ||
                             (c.a == b && c.b == a && std::abs(c.ta - tb) < 1e-8 && std::abs(c.tb - ta) < 1e-8);
      if (same_pair) return;
    }
    const double v1x = eval(A.dth, ta), v1y = eval(A.du, ta);
    const double v2x = eval(B.dth, tb), v2y = eval(B.du, tb);
    const double sine = std::abs(v1x * v2y - v1y * v2x) / (std::hypot(v1x, v1y) * std::hypot(v2x, v2y));
    crossings.push_back({a, b, ta, tb, th, u, sine > 1e-6});
  }

  void subdivide(int a, int b, Interval ia, Interval ib, int depth) {
    const Piece& A = pieces_[a];
    const Piece& B = pieces_[b];
    const Interval ta = horner(A.th, ia), ua = horner(A.u, ia);
    const Interval tb = horner(B.th, ib), ub = horner(B.u, ib);
    if (!overlaps(ta, tb) || !overlaps(ua, ub)) return;

    const bool same = a == b && ia.lo == ib.lo && ia.hi == ib.hi;
    const bool touching = (a == b && (ia.hi == ib.lo || ib.hi == ia.lo)) ||
                          (a != b && next_piece(a) == b && ia.hi == 1 && ib.lo == 0) ||
                          (a != b && next_piece(b) == a && ib.hi == 1 && ia.lo == 0);
    if (same || touching) {
      // A piece of curve monotone in one coordinate cannot meet itself.
      const Interval dta = horner(A.dth, ia), dtb = horner(B.dth, ib);
      const Interval dua = horner(A.du, ia), dub = horner(B.du, ib);
      const Interval dt{std::min(dta.lo, dtb.lo), std::max(dta.hi, dtb.hi)};
      const Interval du{std::min(dua.lo, dub.lo), std::max(dua.hi, dub.hi)};
      if (excludes_zero(dt) || excludes_zero(du)) return;
    }
    const double wa = ia.hi - ia.lo, wb = ib.hi - ib.lo;
    if (depth >= config_.refinement_cap || std::max(wa, wb) < 1e-3) {
      newton(a, b, (ia.lo + ia.hi) / 2, (ib.lo + ib.hi) / 2, ia, ib);
      if (depth < config_.refinement_cap && std::max(wa, wb) > 1e-7) {
        // Keep splitting for tangential contacts Newton cannot settle.
        const double sx = std::max(ta.hi - ta.lo, ua.hi - ua.lo);
        if (sx > 1e-7) split(a, b, ia, ib, depth, same);
        else near_contact(a, b, ia, ib);
      } else {
        near_contact(a, b, ia, ib);
      }
      return;
    }
    split(a, b, ia, ib, depth, same);
  }

  void split(int a, int b, Interval ia, Interval ib, int depth, bool same) {
    const double ma = (ia.lo + ia.hi) / 2, mb = (ib.lo + ib.hi) / 2;
    const Interval a0{ia.lo, ma}, a1{ma, ia.hi}, b0{ib.lo, mb}, b1{mb, ib.hi};
    if (same) {
      subdivide(a, b, a0, a0, depth + 1);
      subdivide(a, b, a0, a1, depth + 1);
      subdivide(a, b, a1, a1, depth + 1);
      return;
    }
    subdivide(a, b, a0, b0, depth + 1);
    subdivide(a, b, a0, b1, depth + 1);
    subdivide(a, b, a1, b0, depth + 1);
    subdivide(a, b, a1, b1, depth + 1);
  }

  // Boxes still overlap at full depth: tangential contact unless a crossing was found nearby.
  void near_contact(int a, int b, Interval ia, Interval ib) {
    const double ta = (ia.lo + ia.hi) / 2, tb = (ib.lo + ib.hi) / 2;
    const Piece& A = pieces_[a];
    const Piece& B = pieces_[b];
    const double th = eval(A.th, ta), u = eval(A.u, ta);
    if (std::abs(th - eval(B.th, tb)) + std::abs(u - eval(B.u, tb)) > 1e-6) return;
    contacts_.push_back({a, b, ta, tb, th, u, false});
  }

  void find_crossings() {
    const Interval unit{0, 1};
    for (std::size_t a = 0; a < pieces_.size(); ++a)
      for (std::size_t b = a; b < pieces_.size(); ++b)
        subdivide(static_cast<int>(a), static_cast<int>(b), unit, unit, 0);
    for (const auto& k : contacts_) {
      bool explained = false;
      for (const auto& c : crossings)
        if (std::abs(c.theta - k.theta) + std::abs(c.u - k.u) < 1e-5) explained = true;
      if (!explained) crossings.push_back(k);
    }
  }

  void check_crossings() {
    // Merge repeated hits of one tangential contact.
    std::vector<Crossing> merged;
    for (const auto& c : crossings) {
      bool dup = false;
      for (auto& m : merged)
        if ((!c.transversal || !m.transversal) && std::abs(m.theta - c.theta) + std::abs(m.u - c.u) < 1e-3) {
          m.transversal = false;
          dup = true;
        }
      if (!dup) merged.push_back(c);
    }
    crossings = std::move(merged);

    for (std::size_t i = 0; i < crossings.size(); ++i) {
      const auto& c = crossings[i];
      const Piece& A = pieces_[c.a];
      if (!c.transversal) {
        add(Kind::NonTransversalCrossing, A, c.ta, "branches meet tangentially");
        continue;
      }
      int near = 0;
      strands_below(rounded(c.theta), c.u, 1e-7, own_points(c), &near);
      if (near > 0) add(Kind::TriplePoint, A, c.ta, "three branches through one point");
    }
    for (const auto& t : tangencies) {
      int near = 0;
      strands_below(t.theta, t.u, 1e-7, own_points(t), &near);
      if (near > 0)
        add(Kind::SharedTangency, pieces_[t.piece], t.t.get_d(), "another branch passes through a fiber tangency");
    }
    // One report per place.
    std::vector<CurveViolation> unique;
    for (auto& v : violations) {
      bool dup = false;
      for (const auto& u : unique)
        if (u.kind == v.kind && u.curve == v.curve && u.piece == v.piece && std::abs(u.t - v.t) < 1e-3) dup = true;
      if (!dup) unique.push_back(std::move(v));
    }
    violations = std::move(unique);
  }
};

}  // namespace

std::vector<CurveViolation> genericity_check_curves(const ParametricCurveSet& curves, const SweepConfig& config) {
  Sweep sweep(curves, config);
  sweep.run();
  return sweep.violations;
}

StrandDiagram curves_to_diagram(const ParametricCurveSet& curves, const SweepConfig& config) {
  if (curves.base != BaseKind::Strip) throw Error(ErrorCode::BaseMismatch, "curve sweeps support the strip only");
  Sweep sweep(curves, config);
  sweep.run();
  if (!sweep.violations.empty()) {
    const auto& v = sweep.violations.front();
    throw Error(ErrorCode::GenericityViolation, std::string(to_string(v.kind)) + " on curve " +
                                                    std::to_string(v.curve) + " piece " + std::to_string(v.piece) +
                                                    " at t = " + std::to_string(v.t) + ": " + v.message);
  }

  struct Pending {
    double theta;
    Rational exact;
    Event event;
  };
  std::vector<Pending> events;
  for (const auto& t : sweep.tangencies) {
    // The tangency point itself is the only strand point near it.
    const int below = sweep.strands_below(t.theta, t.u, 1e-7, sweep.own_points(t));
    Event e = t.birth ? Event::birth(below, t.lower_plus) : Event::death(below);
    events.push_back({t.theta.get_d(), t.theta, e});
  }
  for (const auto& c : sweep.crossings) {
    const Rational th = rounded(c.theta);
    const int below = sweep.strands_below(th, c.u, 1e-7, sweep.own_points(c));
    events.push_back({c.theta, th, Event::cross(below)});
  }
  std::sort(events.begin(), events.end(), [](const Pending& a, const Pending& b) { return a.theta < b.theta; });
  for (std::size_t k = 0; k + 1 < events.size(); ++k)
    if (events[k + 1].theta - events[k].theta < config.epsilon_theta)
      throw Error(ErrorCode::EventCollision, "events at theta ~ " + std::to_string(events[k].theta) +
                                                 " are closer than the tolerance; perturb one curve along theta");

  StrandDiagram w;
  for (auto& p : events) {
    p.event.theta = rounded(p.theta);
    w.events.push_back(p.event);
  }
  const auto report = validate(w);
  if (!report.ok()) throw Error(ErrorCode::PrecisionExhausted, "sweep produced an invalid word: " + word_string(w));
  return w;
}

ParametricCurve hermite_loop(const std::vector<std::array<Rational, 4>>& knots) {
  if (knots.size() < 2) throw Error(ErrorCode::MalformedInput, "a loop needs at least two knots");
  ParametricCurve curve;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const auto& a = knots[k];
    const auto& b = knots[(k + 1) % knots.size()];
    auto segment = [](const Rational& p0, const Rational& m0, const Rational& p1, const Rational& m1) {
      // p0 h00 + m0 h10 + p1 h01 + m1 h11 in the monomial basis
      return Poly({p0, m0, -3 * p0 - 2 * m0 + 3 * p1 - m1, 2 * p0 + m0 - 2 * p1 + m1});
    };
    curve.pieces.push_back({segment(a[0], a[2], b[0], b[2]), segment(a[1], a[3], b[1], b[3])});
  }
  return curve;
}

ParametricCurve hermite_circle(const Rational& theta, const Rational& u, const Rational& radius) {
  const Rational s = ratio(7071, 10000);  // cos 45
  const Rational m = radius * ratio(157, 100);
  std::vector<std::array<Rational, 4>> knots;
  const int signs[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (const auto& sg : signs) {
    const Rational c = sg[0] * s, d = sg[1] * s;
    // Tangent of the counterclockwise circle at (c, d) is (-d, c).
    knots.push_back({theta + radius * c, u + radius * d, -d * m, c * m});
  }
  return hermite_loop(knots);
}

ParametricCurve kidney_curve() {
  const Rational v = ratio(3, 10);
  return hermite_loop({
      {ratio(8, 10), ratio(5, 10), Rational(0), v},         // rightmost point: the final death
      {ratio(5, 10), ratio(8, 10), -v, Rational(0)},        // top
      {ratio(25, 100), ratio(72, 100), Rational(0), -v},    // upper lobe: second birth
      {ratio(4, 10), ratio(5, 10), Rational(0), -v},        // bottom of the dent: middle death
      {ratio(15, 100), ratio(3, 10), Rational(0), -v},      // lower lobe: first birth
      {ratio(5, 10), ratio(2, 10), v, Rational(0)},         // bottom
  });
}

}  // namespace modblob
