#include <gtest/gtest.h>

#include <cmath>

#include "modblob/family.hpp"
#include "support.hpp"

using namespace modblob;
using namespace modblob::testing;

namespace {

// Real roots of the family at theta, located by sign changes of p on a fine
// grid in u (plus grid points where p vanishes).  Adequate away from events.
std::vector<double> sampled_roots(const PolynomialFamily& f, double theta, double range = 4, int steps = 8000) {
  std::size_t piece = 0;
  while (piece + 1 < f.pieces.size() && theta > to_double(f.breakpoints[piece + 1])) ++piece;
  std::vector<double> coeff;
  for (const auto& a : f.pieces[piece].coefficients()) coeff.push_back(a.eval(theta));
  auto eval = [&](double u) {
    double v = 0;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) v = v * u + *it;
    return v;
  };
  std::vector<double> roots;
  double prev = eval(-range);
  for (int k = 1; k <= steps; ++k) {
    const double u = -range + 2 * range * k / steps;
    const double v = eval(u);
    if ((prev < 0) != (v < 0)) roots.push_back(u);
    prev = v;
  }
  return roots;
}

struct SampledEvent {
  double theta;
  int before, after;
};

std::vector<SampledEvent> sampled_events(const PolynomialFamily& f, int samples = 4000) {
  std::vector<SampledEvent> out;
  std::size_t last = sampled_roots(f, 0).size();
  for (int k = 1; k <= samples; ++k) {
    const double theta = static_cast<double>(k) / samples;
    const std::size_t n = sampled_roots(f, theta).size();
    if (n != last) out.push_back({theta - 0.5 / samples, static_cast<int>(last), static_cast<int>(n)});
    last = n;
  }
  return out;
}

void expect_matches_sampling(const PolynomialFamily& f) {
  const FamilyReport report = validate_family(f);
  const auto sampled = sampled_events(f);
  ASSERT_EQ(sampled.size(), report.events.size());
  for (std::size_t k = 0; k < sampled.size(); ++k) {
    const auto& e = report.events[k];
    EXPECT_NEAR(to_double(e.theta), sampled[k].theta, 1.0 / 4000);
    EXPECT_EQ(e.kind == EventKind::Birth, sampled[k].after > sampled[k].before);
    // slot: roots below the double root, counted on the side where the pair is absent
    const double side = e.kind == EventKind::Birth ? to_double(e.theta) - 1e-3 : to_double(e.theta) + 1e-3;
    int below = 0;
    for (double u : sampled_roots(f, side)) below += u < e.u;
    EXPECT_EQ(e.slot, below);
  }
}

}  // namespace

TEST(Family, ConstantHasNoEvents) {
  const PolynomialFamily f = PolynomialFamily::constant(Poly(std::vector<Rational>{1, 0, 0, 0, 1}));
  EXPECT_TRUE(validate_family(f).events.empty());
  EXPECT_EQ(family_class(f), 0);
  EXPECT_TRUE(extract_diagram(f).doodle.events.empty());
}

TEST(Family, LensMatchesSampling) {
  expect_matches_sampling(lens_family());
  const FamilyReport r = validate_family(lens_family());
  ASSERT_EQ(r.events.size(), 2u);
  EXPECT_EQ(r.events[0].theta, ratio(1, 4));
  EXPECT_EQ(r.events[1].theta, ratio(3, 4));
  EXPECT_EQ(word_string(extract_diagram(lens_family()).doodle), "[B0+ D0]");
}

TEST(Family, KappaMatchesSampling) {
  expect_matches_sampling(kappa_family());
  const BlobDiagram b = extract_diagram(kappa_family());
  EXPECT_TRUE(b.embedded());
  EXPECT_EQ(oracle_J(b.doodle), 1);
  EXPECT_EQ(family_class(kappa_family()), 1);
  EXPECT_EQ(signed_event_count(validate_family(kappa_family())), 1);
}

TEST(Family, ExtractedThetasAreIncreasing) {
  const BlobDiagram b = extract_diagram(kappa_family());
  for (std::size_t k = 0; k < b.doodle.events.size(); ++k) {
    ASSERT_TRUE(b.doodle.events[k].theta.has_value());
    if (k) EXPECT_LT(*b.doodle.events[k - 1].theta, *b.doodle.events[k].theta);
  }
  EXPECT_TRUE(validate(b).ok());
}

TEST(Family, ReverseAndConcatenate) {
  const PolynomialFamily k = kappa_family();
  EXPECT_EQ(family_class(reverse(k)), -1);
  EXPECT_EQ(family_class(concatenate(k, k)), 2);
  EXPECT_EQ(family_class(concatenate(k, reverse(k))), 0);
  expect_matches_sampling(reverse(k));
  expect_matches_sampling(concatenate(k, k));
}

TEST(Family, BridgeAddsOnlyComplexCollisions) {
  const PolynomialFamily f = concatenate(kappa_family(), lens_family());
  const FamilyReport r = validate_family(f);
  EXPECT_EQ(family_class(f), 1);
  EXPECT_GE(r.complex_collisions, 1);
  expect_matches_sampling(f);
}

TEST(Family, TighterPrecisionGivesTheSameWord) {
  SweepConfig loose, tight;
  loose.root_precision = 1e-12;
  tight.root_precision = 1e-30;
  for (const auto& f : {lens_family(), kappa_family(), concatenate(kappa_family(), kappa_family())})
    EXPECT_TRUE(extract_diagram(f, loose).doodle.same_word(extract_diagram(f, tight).doodle));
}

namespace {

ErrorCode failure_of(const PolynomialFamily& f) {
  try {
    validate_family(f);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "family validated";
  return ErrorCode::MalformedInput;
}

}  // namespace

TEST(Family, Rejections) {
  EXPECT_EQ(failure_of(triple_root_family()), ErrorCode::TripleRootDetected);
  const Poly t = Poly::x();
  const Poly half = t - Poly::constant(ratio(1, 2));
  // u^2 + (theta - 1/2)^2 touches zero without crossing the discriminant
  EXPECT_EQ(failure_of(PolynomialFamily::single(BiPoly(std::vector<Poly>{half * half, Poly(), Poly::constant(1)}))),
            ErrorCode::NonTransversalDiscriminantCrossing);
  EXPECT_EQ(failure_of(PolynomialFamily::constant(Poly(std::vector<Rational>{-1, 0, 1}))),
            ErrorCode::BasepointViolation);
  // lens event placed exactly on a breakpoint
  PolynomialFamily split = lens_family();
  split.breakpoints = {Rational(0), ratio(1, 4), Rational(1)};
  split.pieces = {lens_family().pieces[0], lens_family().pieces[0]};
  EXPECT_EQ(failure_of(split), ErrorCode::GenericityViolation);
  PolynomialFamily odd = PolynomialFamily::constant(Poly(std::vector<Rational>{1, 0, 0, 1}));
  EXPECT_EQ(failure_of(odd), ErrorCode::MalformedInput);
}

TEST(Family, CycleWrapStrands) {
  // u^2 - 1 on a cycle: two roots all the way round
  const PolynomialFamily f = PolynomialFamily::constant(Poly(std::vector<Rational>{-1, 0, 1}), BaseKind::Cycle);
  const BlobDiagram b = extract_diagram(f);
  EXPECT_EQ(b.doodle.base.kind, BaseKind::Cycle);
  EXPECT_EQ(b.doodle.base.wrap_width, 2);
  EXPECT_TRUE(b.doodle.events.empty());
  EXPECT_TRUE(validate(b).ok());
}
