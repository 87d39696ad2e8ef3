#pragma once

// Exact univariate polynomials over Q, real-root isolation, and bivariate
// polynomials in (u, theta) with resultants over Q[theta].

#include <optional>
#include <string>
#include <vector>

#include "modblob/rational.hpp"

namespace modblob {

/// Ascending coefficients; trailing zeros are trimmed.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coefficients);
  static Poly constant(const Rational& c);
  static Poly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coefficient(int k) const;
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  int sign_at(const Rational& x) const;

  Poly derivative() const;
  Poly compose(const Poly& inner) const;
  Poly monic() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& k, const Poly& a);
  Poly operator-() const;
  friend bool operator==(const Poly&, const Poly&) = default;

  static void divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder);
  /// Exact division; throws if b does not divide a.
  static Poly exact_div(const Poly& a, const Poly& b);

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

Poly gcd(Poly a, Poly b);
Poly square_free(const Poly& p);

std::vector<Poly> sturm_sequence(const Poly& p);
/// Sign changes of the sequence at x, zeros skipped.
int sign_variations(const std::vector<Poly>& seq, const Rational& x);
/// Bound B with every complex root of p inside |z| < B.
Rational root_bound(const Poly& p);

/// Distinct real roots in the open interval (lo, hi); open ends are infinite.
int count_real_roots(const Poly& p, const std::optional<Rational>& lo = std::nullopt,
                     const std::optional<Rational>& hi = std::nullopt);

/// Isolating interval [lo, hi] holding exactly one root; lo == hi for an exact root.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
  Rational mid() const { return (lo + hi) / 2; }
};

/// Distinct real roots in (lo, hi), sorted.  Intervals are closed, pairwise
/// disjoint, and strictly inside the search range.
std::vector<RootInterval> isolate_real_roots(const Poly& p, const std::optional<Rational>& lo = std::nullopt,
                                             const std::optional<Rational>& hi = std::nullopt);

/// Bisects until hi - lo <= width.  `p` must be square-free with exactly one
/// root in the interval.
void refine_root(const Poly& p, RootInterval& root, const Rational& width);

/// p(u, theta) = sum_k coefficient(k)(theta) u^k.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<Poly> coefficients);

  int degree_u() const { return static_cast<int>(c_.size()) - 1; }
  const Poly& coefficient(int k) const { return c_.at(k); }
  const std::vector<Poly>& coefficients() const { return c_; }

  /// The univariate polynomial in u at a fixed theta.
  Poly at(const Rational& theta) const;
  double eval(double u, double theta) const;
  BiPoly derivative_u() const;
  BiPoly compose_theta(const Poly& inner) const;
  friend bool operator==(const BiPoly&, const BiPoly&) = default;

 private:
  std::vector<Poly> c_;
};

/// Res_u(p, q) as a polynomial in theta (Sylvester determinant, fraction-free elimination).
Poly resultant_u(const BiPoly& p, const BiPoly& q);
/// Res_u(p, dp/du): vanishes exactly where p(., theta) has a repeated root
/// (or the leading coefficient vanishes).
Poly discriminant_u(const BiPoly& p);

}  // namespace modblob
