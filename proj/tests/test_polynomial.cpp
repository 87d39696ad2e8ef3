#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "modblob/polynomial.hpp"

using namespace modblob;

namespace {

Poly from_roots(const std::vector<Rational>& roots) {
  Poly p = Poly::constant(1);
  for (const auto& r : roots) p = p * Poly(std::vector<Rational>{-r, 1});
  return p;
}

std::vector<Rational> random_roots(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 7);
  std::vector<Rational> out;
  while (static_cast<int>(out.size()) < n) {
    const Rational r = ratio(num(rng), den(rng));
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Poly, Arithmetic) {
  const Poly x = Poly::x();
  const Poly p = x * x - Poly::constant(1);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(Rational(3)), Rational(8));
  EXPECT_EQ(p.derivative(), Rational(2) * x);
  Poly q, r;
  Poly::divmod(p, x - Poly::constant(1), q, r);
  EXPECT_EQ(q, x + Poly::constant(1));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(p.compose(x + Poly::constant(1))(Rational(0)), Rational(0));
}

TEST(Poly, GcdAndSquareFree) {
  const Poly p = from_roots({1, 1, -2});
  EXPECT_EQ(gcd(p, p.derivative()).monic(), from_roots({1}));
  EXPECT_EQ(square_free(p).monic(), from_roots({-2, 1}));
}

TEST(Sturm, CountsMatchKnownRoots) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto roots = random_roots(rng, 1 + trial % 6);
    // an irreducible quadratic factor adds no real roots
    const Poly p = from_roots(roots) * Poly(std::vector<Rational>{1, 0, 1});
    EXPECT_EQ(count_real_roots(p), static_cast<int>(roots.size()));
    std::uniform_int_distribution<int> num(-50, 50);
    for (int k = 0; k < 10; ++k) {
      Rational a = ratio(num(rng), 3), b = ratio(num(rng), 3);
      if (a > b) std::swap(a, b);
      if (a == b) continue;
      const int expected = static_cast<int>(std::count_if(roots.begin(), roots.end(), [&](const Rational& r) {
        return a < r && r < b;
      }));
      EXPECT_EQ(count_real_roots(p, a, b), expected) << p.to_string() << " on (" << a << ", " << b << ")";
    }
  }
}

TEST(Sturm, IsolationAndRefinement) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const auto roots = random_roots(rng, 2 + trial % 5);
    const Poly p = from_roots(roots);
    auto intervals = isolate_real_roots(p);
    ASSERT_EQ(intervals.size(), roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
      EXPECT_LE(intervals[k].lo, roots[k]);
      EXPECT_GE(intervals[k].hi, roots[k]);
      refine_root(p, intervals[k], ratio(1, 1000000));
      EXPECT_LE(intervals[k].hi - intervals[k].lo, ratio(1, 1000000));
      EXPECT_LE(intervals[k].lo, roots[k]);
      EXPECT_GE(intervals[k].hi, roots[k]);
    }
  }
}

TEST(Sturm, IrrationalRoots) {
  const Poly p(std::vector<Rational>{-2, 0, 1});  // u^2 - 2
  auto roots = isolate_real_roots(p);
  ASSERT_EQ(roots.size(), 2u);
  refine_root(p, roots[1], ratio(1, 1000000000));
  EXPECT_NEAR(to_double(roots[1].mid()), std::sqrt(2.0), 1e-9);
  EXPECT_GE(root_bound(p), Rational(2));
}

TEST(Resultant, ProductOverRoots) {
  // for monic f, Res(f, g) = prod g(r) over the roots r of f
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rf = random_roots(rng, 1 + trial % 4);
    const auto rg = random_roots(rng, 1 + trial % 3);
    const Poly f = from_roots(rf), g = from_roots(rg);
    Rational expected = 1;
    for (const auto& r : rf) expected *= g(r);
    auto lift = [](const Poly& p) {
      std::vector<Poly> c;
      for (const auto& a : p.coefficients()) c.push_back(Poly::constant(a));
      return BiPoly(c);
    };
    const Poly res = resultant_u(lift(f), lift(g));
    ASSERT_LE(res.degree(), 0);
    EXPECT_EQ(res.is_zero() ? Rational(0) : res.coefficient(0), expected);
  }
}

TEST(Resultant, QuadraticDiscriminantVanishesOnDoubleRoots) {
  // p = u^2 + (2 theta) u + (theta^2 - theta + 1/4): disc = 4 theta - 1 up to a constant
  const Poly t = Poly::x();
  const BiPoly p(std::vector<Poly>{t * t - t + Poly::constant(ratio(1, 4)), Rational(2) * t, Poly::constant(1)});
  const Poly d = discriminant_u(p);
  const Poly reference = Rational(4) * t - Poly::constant(1);
  Poly q, r;
  Poly::divmod(d, reference, q, r);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q.degree(), 0);
  EXPECT_EQ(d(ratio(1, 4)), Rational(0));
}

TEST(BiPoly, EvaluationAgrees) {
  const Poly t = Poly::x();
  const BiPoly p(std::vector<Poly>{t, Poly::constant(-1), Poly::constant(1)});  // u^2 - u + theta
  EXPECT_EQ(p.at(ratio(1, 2)), Poly(std::vector<Rational>{ratio(1, 2), -1, 1}));
  EXPECT_DOUBLE_EQ(p.eval(2.0, 0.5), 2.5);
  EXPECT_EQ(p.derivative_u().at(0), Poly(std::vector<Rational>{-1, 2}));
  EXPECT_EQ(p.compose_theta(Rational(2) * t).at(ratio(1, 4)), p.at(ratio(1, 2)));
}
