#pragma once

// theta-families of real polynomials p(u, theta) with even degree, positive
// leading coefficient and only simple or double real roots.  The zero locus
// of such a family is an embedded curve in the strip (or cylinder) and the
// sublevel set {p <= 0} is the blob it bounds.

#include <vector>

#include "modblob/diagram.hpp"
#include "modblob/polynomial.hpp"

namespace modblob {

struct PolynomialFamily {
  BaseKind base = BaseKind::Strip;
  int degree = 2;
  // 0 = b_0 < b_1 < ... < b_m = 1; piece k lives on [b_k, b_{k+1}] and is
  // written in the global theta.
  std::vector<Rational> breakpoints{Rational(0), Rational(1)};
  std::vector<BiPoly> pieces;

  /// The same polynomial in u for every theta.
  static PolynomialFamily constant(const Poly& p, BaseKind base = BaseKind::Strip);
  /// One piece on [0, 1].
  static PolynomialFamily single(const BiPoly& p, BaseKind base = BaseKind::Strip);

  Poly at(const Rational& theta) const;
};

struct SweepConfig {
  // Width to which double-root events are isolated in theta.
  double root_precision = 1e-24;
  // Curve sweeps: two events closer than this are rejected.
  double epsilon_theta = 1e-9;
  // Bisection steps allowed per root or crossing.
  int refinement_cap = 200;
};

struct FamilyEvent {
  EventKind kind = EventKind::Birth;
  Rational theta;           // exact when the event sits at a rational theta
  Rational theta_lo, theta_hi;
  int slot = 0;             // real roots strictly below the double root
  double u = 0;             // approximate double root
};

struct FamilyReport {
  std::vector<FamilyEvent> events;  // sorted by theta
  int roots_at_start = 0;
  int complex_collisions = 0;       // discriminant zeros without a real double root
};

/// Throws TripleRootDetected, NonTransversalDiscriminantCrossing,
/// BasepointViolation, GenericityViolation (event at a breakpoint),
/// PrecisionExhausted or MalformedInput.
FamilyReport validate_family(const PolynomialFamily& family, const SweepConfig& config = {});

/// The zero locus as an embedded blob filled by {p <= 0}.
BlobDiagram extract_diagram(const PolynomialFamily& family, const SweepConfig& config = {});

/// J of the extracted diagram.  Strip families only.
long long family_class(const PolynomialFamily& family, const SweepConfig& config = {});

/// Signed count of double-root events with an odd number of roots below:
/// deaths count +1, births -1.
long long signed_event_count(const FamilyReport& report);

/// theta -> 1 - theta.
PolynomialFamily reverse(const PolynomialFamily& family);

/// f on the first half of the strip, g on the second; a linear bridge is
/// inserted when the end of f and the start of g differ.  Strip only.
PolynomialFamily concatenate(const PolynomialFamily& f, const PolynomialFamily& g);

// Sample families.
PolynomialFamily kappa_family();        // (u^2 - 1)^2 + t u + g along a loop in (t, g)
PolynomialFamily lens_family();         // u^2 + (theta - 1/4)(theta - 3/4)
PolynomialFamily triple_root_family();  // u^3 (u - 1) + 16 (theta - 1/2)^2 (u^4 + 1)

}  // namespace modblob
