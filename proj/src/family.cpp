#include "modblob/family.hpp"

#include <algorithm>
#include <cmath>

#include "modblob/error.hpp"
#include "modblob/invariants.hpp"

namespace modblob {

PolynomialFamily PolynomialFamily::constant(const Poly& p, BaseKind base) {
  std::vector<Poly> coeffs;
  for (const auto& c : p.coefficients()) coeffs.push_back(Poly::constant(c));
  return single(BiPoly(std::move(coeffs)), base);
}

PolynomialFamily PolynomialFamily::single(const BiPoly& p, BaseKind base) {
  PolynomialFamily f;
  f.base = base;
  f.degree = p.degree_u();
  f.pieces = {p};
  return f;
}

Poly PolynomialFamily::at(const Rational& theta) const {
  for (std::size_t k = 0; k < pieces.size(); ++k)
    if (theta <= breakpoints[k + 1]) return pieces[k].at(theta);
  return pieces.back().at(theta);
}

namespace {

Rational dyadic_at_most(double width) {
  Rational w(1);
  while (w.get_d() > width) w /= 2;
  return w;
}

std::string theta_text(const Rational& t) { return format_rational(t) + " (~" + std::to_string(t.get_d()) + ")"; }

void check_well_formed(const PolynomialFamily& f) {
  if (f.degree <= 0 || f.degree % 2 != 0)
    throw Error(ErrorCode::MalformedInput, "degree bound must be even and positive");
  if (f.pieces.empty() || f.breakpoints.size() != f.pieces.size() + 1)
    throw Error(ErrorCode::MalformedInput, "need one piece per breakpoint interval");
  if (f.breakpoints.front() != 0 || f.breakpoints.back() != 1)
    throw Error(ErrorCode::MalformedInput, "breakpoints must run from 0 to 1");
  for (std::size_t k = 0; k + 1 < f.breakpoints.size(); ++k)
    if (f.breakpoints[k] >= f.breakpoints[k + 1])
      throw Error(ErrorCode::MalformedInput, "breakpoints must increase");
  for (std::size_t k = 0; k < f.pieces.size(); ++k) {
    const BiPoly& p = f.pieces[k];
    if (p.degree_u() != f.degree)
      throw Error(ErrorCode::MalformedInput, "piece " + std::to_string(k) + " does not have degree " +
                                                 std::to_string(f.degree) + " in u");
    const Poly& lead = p.coefficient(f.degree);
    const Rational a = f.breakpoints[k], b = f.breakpoints[k + 1];
    if (lead.sign_at(a) <= 0 || lead.sign_at(b) <= 0 || count_real_roots(lead, a, b) > 0)
      throw Error(ErrorCode::MalformedInput, "leading coefficient must stay positive");
    if (k + 1 < f.pieces.size() && !(p.at(b) == f.pieces[k + 1].at(b)))
      throw Error(ErrorCode::MalformedInput, "pieces disagree at theta = " + format_rational(b));
  }
  if (f.base == BaseKind::Cycle && !(f.pieces.front().at(Rational(0)) == f.pieces.back().at(Rational(1))))
    throw Error(ErrorCode::MalformedInput, "cycle family does not close up");
}

// Exact analysis of p(., t) at a rational t: real double roots and whether any is triple.
struct PointAnalysis {
  std::vector<RootInterval> double_roots;
  bool triple = false;
};

PointAnalysis analyse_exact(const Poly& p) {
  PointAnalysis out;
  const Poly g = gcd(p, p.derivative());
  if (g.degree() <= 0) return out;
  out.double_roots = isolate_real_roots(g);
  const Poly g3 = gcd(g, p.derivative().derivative());
  out.triple = g3.degree() > 0 && count_real_roots(g3) > 0;
  return out;
}

struct Critical {
  Rational u;
  double value = 0;      // |p(u)| relative to the coefficient scale
  double curvature = 0;  // |p''(u)| relative to the coefficient scale
};

// Real critical point of p where |p| is smallest.
std::optional<Critical> lowest_critical(const Poly& p) {
  const Poly dp = p.derivative();
  const Poly ddp = dp.derivative();
  double scale = 0;
  for (const auto& c : p.coefficients()) scale = std::max(scale, std::abs(c.get_d()));
  std::optional<Critical> best;
  for (auto r : isolate_real_roots(dp)) {
    refine_root(square_free(dp), r, Rational(1) / Rational(mpz_class(1) << 80));
    const Rational u = r.mid();
    const double mag = std::pow(1.0 + std::abs(u.get_d()), p.degree());
    Critical c{u, std::abs(p(u).get_d()) / (scale * mag), std::abs(ddp(u).get_d()) / (scale * mag)};
    if (!best || c.value < best->value) best = c;
  }
  return best;
}

constexpr double kDoubleRootTolerance = 1e-12;
constexpr double kTripleRootTolerance = 1e-6;

}  // namespace

FamilyReport validate_family(const PolynomialFamily& f, const SweepConfig& config) {
  check_well_formed(f);
  FamilyReport report;
  const Rational width = dyadic_at_most(config.root_precision);

  const Poly start = f.pieces.front().at(Rational(0));
  report.roots_at_start = count_real_roots(start);
  if (f.base == BaseKind::Strip) {
    if (report.roots_at_start > 0)
      throw Error(ErrorCode::BasepointViolation, "real roots at theta = 0");
    if (count_real_roots(f.pieces.back().at(Rational(1))) > 0)
      throw Error(ErrorCode::BasepointViolation, "real roots at theta = 1");
  }
  {
    const auto a = analyse_exact(start);
    if (a.triple) throw Error(ErrorCode::TripleRootDetected, "theta = 0");
    if (!a.double_roots.empty()) throw Error(ErrorCode::GenericityViolation, "double root at theta = 0");
  }

  int running = report.roots_at_start;
  for (std::size_t k = 0; k < f.pieces.size(); ++k) {
    const BiPoly& P = f.pieces[k];
    const Rational a = f.breakpoints[k], b = f.breakpoints[k + 1];
    const Poly disc = discriminant_u(P);

    if (disc.is_zero()) {
      const auto pa = analyse_exact(P.at((a + b) / 2));
      if (pa.triple) throw Error(ErrorCode::TripleRootDetected, "persistent triple root on piece " + std::to_string(k));
      throw Error(ErrorCode::NonTransversalDiscriminantCrossing, "persistent double root on piece " + std::to_string(k));
    }

    // Breakpoints themselves must be regular.
    if (disc.sign_at(b) == 0) {
      const auto pb = analyse_exact(P.at(b));
      if (pb.triple) throw Error(ErrorCode::TripleRootDetected, "theta = " + theta_text(b));
      if (!pb.double_roots.empty())
        throw Error(ErrorCode::GenericityViolation, "double root at breakpoint theta = " + theta_text(b));
    }

    const Poly repeated = gcd(disc, disc.derivative());
    const Poly T = resultant_u(P.derivative_u(), P.derivative_u().derivative_u());
    const Poly triple_candidates = T.is_zero() ? square_free(disc) : gcd(disc, T);
    const Poly disc_sf = square_free(disc);

    for (auto root : isolate_real_roots(disc, a, b)) {
      refine_root(disc_sf, root, width);
      const bool exact = root.exact();
      const Rational l = root.lo, r = root.hi;
      const Rational tm = root.mid();
      bool multiple = repeated.degree() > 0 &&
                      (exact ? repeated.sign_at(tm) == 0 : count_real_roots(repeated, l, r) > 0);
      const bool triple_possible =
          triple_candidates.degree() > 0 &&
          (exact ? triple_candidates.sign_at(tm) == 0 : count_real_roots(triple_candidates, l, r) > 0);

      // Root counts on both sides; for an exact root step just off it.
      Rational left = l, right = r;
      if (exact) {
        Rational step = width;
        left = tm - step;
        right = tm + step;
        while (disc.sign_at(left) == 0 || disc.sign_at(right) == 0 || count_real_roots(disc_sf, left, tm) > 0 ||
               count_real_roots(disc_sf, tm, right) > 0) {
          step /= 2;
          left = tm - step;
          right = tm + step;
        }
      }
      const int n_left = count_real_roots(P.at(left));
      const int n_right = count_real_roots(P.at(right));
      const int delta = n_right - n_left;

      bool real_double = false, triple = false;
      Rational u_star;
      double u_approx = 0;
      if (exact) {
        const auto pa = analyse_exact(P.at(tm));
        triple = pa.triple;
        real_double = !pa.double_roots.empty();
        if (real_double) {
          u_star = pa.double_roots.front().mid();
          if (pa.double_roots.size() > 1) multiple = true;
        }
      } else {
        // A count change already proves that a real pair met inside [l, r];
        // otherwise |p| at the critical point is of the order of the width.
        const auto crit = lowest_critical(P.at(tm));
        const double tol = std::max(kDoubleRootTolerance, 1e4 * Rational(r - l).get_d());
        if (crit && (delta != 0 || crit->value < tol)) {
          real_double = true;
          u_star = crit->u;
          triple = triple_possible && crit->curvature < kTripleRootTolerance;
        }
      }
      u_approx = u_star.get_d();
      if (triple) throw Error(ErrorCode::TripleRootDetected, "theta = " + theta_text(tm));
      if (delta != 0 && !real_double)
        throw Error(ErrorCode::PrecisionExhausted, "root count jumps without a located double root near theta = " +
                                                        theta_text(tm));
      if (!real_double) {
        ++report.complex_collisions;
        continue;
      }
      if (multiple || delta == 0)
        throw Error(ErrorCode::NonTransversalDiscriminantCrossing, "theta = " + theta_text(tm));
      if (delta != 2 && delta != -2)
        throw Error(ErrorCode::PrecisionExhausted, "unexpected root count change near theta = " + theta_text(tm));
      if (n_left != running)
        throw Error(ErrorCode::PrecisionExhausted, "root count drift near theta = " + theta_text(tm));

      FamilyEvent ev;
      ev.kind = delta > 0 ? EventKind::Birth : EventKind::Death;
      ev.theta = tm;
      ev.theta_lo = l;
      ev.theta_hi = r;
      ev.u = u_approx;
      ev.slot = count_real_roots(P.at(delta > 0 ? left : right), std::nullopt, u_star);
      report.events.push_back(ev);
      running = n_right;
    }
    if (count_real_roots(P.at(b)) != running)
      throw Error(ErrorCode::PrecisionExhausted, "root count drift on piece " + std::to_string(k));
  }
  return report;
}

BlobDiagram extract_diagram(const PolynomialFamily& f, const SweepConfig& config) {
  const FamilyReport report = validate_family(f, config);
  StrandDiagram w;
  if (f.base == BaseKind::Cycle) {
    w.base = BaseSpace::cycle(report.roots_at_start);
    for (int k = 0; k < report.roots_at_start; ++k) w.wrap_dirs.push_back(k % 2 == 0);
  }
  for (const auto& e : report.events) {
    // {p <= 0} lies above every even-indexed root, so strand k runs '+' iff k is even.
    Event ev = e.kind == EventKind::Birth ? Event::birth(e.slot, e.slot % 2 == 0) : Event::death(e.slot);
    ev.theta = e.theta;
    w.events.push_back(ev);
  }
  BlobDiagram blob = make_blob(std::move(w));
  const auto v = validate(blob);
  if (!v.ok() || !blob.embedded())
    throw Error(ErrorCode::PrecisionExhausted, "extracted word is not an embedded blob: " + word_string(blob.doodle));
  return blob;
}

long long family_class(const PolynomialFamily& f, const SweepConfig& config) {
  if (f.base != BaseKind::Strip) throw Error(ErrorCode::BaseMismatch, "family_class needs a strip family");
  return invariant_J(extract_diagram(f, config));
}

long long signed_event_count(const FamilyReport& report) {
  long long total = 0;
  for (const auto& e : report.events)
    if (e.slot % 2 == 1) total += e.kind == EventKind::Death ? 1 : -1;
  return total;
}

PolynomialFamily reverse(const PolynomialFamily& f) {
  PolynomialFamily out = f;
  const Poly flip({Rational(1), Rational(-1)});
  out.pieces.clear();
  out.breakpoints.clear();
  for (auto it = f.pieces.rbegin(); it != f.pieces.rend(); ++it) out.pieces.push_back(it->compose_theta(flip));
  for (auto it = f.breakpoints.rbegin(); it != f.breakpoints.rend(); ++it) out.breakpoints.push_back(1 - *it);
  return out;
}

namespace {

// Multiplies by (u^2 + 1)^k, which has no real roots.
BiPoly raise_degree(const BiPoly& p, int k) {
  BiPoly out = p;
  for (int j = 0; j < k; ++j) {
    std::vector<Poly> c(out.degree_u() + 3);
    for (int i = 0; i <= out.degree_u(); ++i) {
      c[i] += out.coefficient(i);
      c[i + 2] += out.coefficient(i);
    }
    out = BiPoly(std::move(c));
  }
  return out;
}

void append_scaled(PolynomialFamily& out, const PolynomialFamily& f, const Rational& from, const Rational& to) {
  // theta_local = (theta - from) / (to - from)
  const Rational span = to - from;
  const Poly inner({-from / span, Rational(1) / span});
  for (std::size_t k = 0; k < f.pieces.size(); ++k) {
    out.pieces.push_back(raise_degree(f.pieces[k], (out.degree - f.degree) / 2).compose_theta(inner));
    out.breakpoints.push_back(from + span * f.breakpoints[k + 1]);
  }
}

}  // namespace

PolynomialFamily concatenate(const PolynomialFamily& f, const PolynomialFamily& g) {
  if (f.base != BaseKind::Strip || g.base != BaseKind::Strip)
    throw Error(ErrorCode::BaseMismatch, "concatenation needs strip families");
  PolynomialFamily out;
  out.degree = std::max(f.degree, g.degree);
  out.breakpoints = {Rational(0)};
  const Poly end_f = raise_degree(f.pieces.back(), (out.degree - f.degree) / 2).at(Rational(1));
  const Poly start_g = raise_degree(g.pieces.front(), (out.degree - g.degree) / 2).at(Rational(0));
  if (end_f == start_g) {
    append_scaled(out, f, Rational(0), Rational(1, 2));
    append_scaled(out, g, Rational(1, 2), Rational(1));
    return out;
  }
  append_scaled(out, f, Rational(0), Rational(1, 3));
  // Convex combination of two polynomials without real roots has none either.
  std::vector<Poly> bridge(out.degree + 1);
  const Poly s({Rational(-1), Rational(3)});  // 0 at theta = 1/3, 1 at 2/3
  const Poly one_minus_s = Poly::constant(1) - s;
  for (int i = 0; i <= out.degree; ++i)
    bridge[i] = end_f.coefficient(i) * one_minus_s + start_g.coefficient(i) * s;
  out.pieces.push_back(BiPoly(std::move(bridge)));
  out.breakpoints.push_back(Rational(2, 3));
  append_scaled(out, g, Rational(2, 3), Rational(1));
  return out;
}

PolynomialFamily kappa_family() {
  // (t, g) runs around a loop that crosses the swallowtail discriminant of
  // (u^2 - 1)^2 + t u + g, six linear pieces of equal length.
  const std::vector<std::pair<Rational, Rational>> corners = {
      {Rational(0), Rational(2)},  {Rational(1, 2), Rational(2)},  {Rational(1, 2), Rational(-2)},
      {Rational(3), Rational(-2)}, {Rational(3), Rational(10)},    {Rational(0), Rational(10)},
      {Rational(0), Rational(2)}};
  PolynomialFamily f;
  f.degree = 4;
  f.breakpoints = {Rational(0)};
  const int n = static_cast<int>(corners.size()) - 1;
  for (int k = 0; k < n; ++k) {
    // s = n theta - k on [k/n, (k+1)/n]
    const Poly s({Rational(-k), Rational(n)});
    const auto [t0, g0] = corners[k];
    const auto [t1, g1] = corners[k + 1];
    const Poly t = Poly::constant(t0) + (t1 - t0) * s;
    const Poly g = Poly::constant(g0) + (g1 - g0) * s;
    f.pieces.push_back(BiPoly({Poly::constant(1) + g, t, Poly::constant(-2), Poly(), Poly::constant(1)}));
    f.breakpoints.push_back(ratio(k + 1, n));
  }
  return f;
}

PolynomialFamily lens_family() {
  // (theta - 1/4)(theta - 3/4) = theta^2 - theta + 3/16
  return PolynomialFamily::single(
      BiPoly({Poly({Rational(3, 16), Rational(-1), Rational(1)}), Poly(), Poly::constant(1)}));
}

PolynomialFamily triple_root_family() {
  // 16 (theta - 1/2)^2 = 16 theta^2 - 16 theta + 4
  const Poly w({Rational(4), Rational(-16), Rational(16)});
  return PolynomialFamily::single(BiPoly({w, Poly(), Poly(), Poly::constant(-1), w + Poly::constant(1)}));
}

}  // namespace modblob
