#pragma once

// Piecewise-polynomial closed curves t -> (theta(t), u(t)) and the sweep
// that turns them into event words.

#include <array>
#include <string>
#include <vector>

#include "modblob/diagram.hpp"
#include "modblob/family.hpp"
#include "modblob/polynomial.hpp"

namespace modblob {

struct CurvePiece {
  Poly theta;  // in the local parameter t in [0, 1]
  Poly u;
};

struct ParametricCurve {
  std::vector<CurvePiece> pieces;  // piece k ends where piece k+1 starts; the last closes onto the first
  bool reversed = false;           // traverse against the parameter
};

struct ParametricCurveSet {
  BaseKind base = BaseKind::Strip;
  std::vector<ParametricCurve> curves;
};

struct CurveViolation {
  enum class Kind { NotClosed, Irregular, OutOfStrip, HigherTangency, TriplePoint, NonTransversalCrossing, SharedTangency };
  Kind kind;
  int curve = 0;
  int piece = 0;
  double t = 0;  // local parameter of the offending point
  std::string message;
};

const char* to_string(CurveViolation::Kind kind);

std::vector<CurveViolation> genericity_check_curves(const ParametricCurveSet& curves, const SweepConfig& config = {});

/// Sweeps the curves along theta.  Throws GenericityViolation (first
/// violation found) or EventCollision.
StrandDiagram curves_to_diagram(const ParametricCurveSet& curves, const SweepConfig& config = {});

/// Closed C1 curve through the knots (theta, u, dtheta, du) by cubic Hermite pieces.
ParametricCurve hermite_loop(const std::vector<std::array<Rational, 4>>& knots);

/// Counterclockwise approximate circle; joints sit at the 45 degree points.
ParametricCurve hermite_circle(const Rational& theta, const Rational& u, const Rational& radius);

/// Counterclockwise bean whose dent faces -theta; sweeps to kidney(+1).
ParametricCurve kidney_curve();

}  // namespace modblob
