#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "kdvvar/error.hpp"
#include "kdvvar/exppoly.hpp"

using kdv::ExpPoly;
using kdv::ExpTerm;

namespace {

ExpPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(1, 5);
  std::uniform_int_distribution<int> rate(-6, 6);  // multiples of 0.5: exact arithmetic
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::vector<ExpTerm> t;
  for (int i = n(rng); i > 0; --i) t.push_back({c(rng), 0.5 * rate(rng)});
  return ExpPoly::canonicalize(t);
}

}  // namespace

TEST(ExpPoly, CanonicalizeMergesAndSorts) {
  auto p = ExpPoly::canonicalize({{1.0, 2.0}, {3.0, -1.0}, {2.0, 2.0}, {0.0, 5.0}});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.terms()[0], (ExpTerm{3.0, -1.0}));
  EXPECT_EQ(p.terms()[1], (ExpTerm{3.0, 2.0}));
}

TEST(ExpPoly, CancellationGivesZero) {
  auto p = ExpPoly::canonicalize({{1.0, 1.0}, {-1.0, 1.0}});
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.eval(3.0), 0.0);
}

TEST(ExpPoly, NonFiniteRejected) {
  EXPECT_THROW(ExpPoly::canonicalize({{std::nan(""), 1.0}}), kdv::InvalidInput);
  EXPECT_THROW(ExpPoly::canonicalize({{1.0, std::numeric_limits<double>::infinity()}}), kdv::InvalidInput);
}

TEST(ExpPoly, MulOfCoshPair) {
  auto p = ExpPoly::canonicalize({{1.0, 0.5}, {1.0, -0.5}});
  auto sq = mul(p, p);
  ASSERT_EQ(sq.size(), 3u);
  EXPECT_EQ(sq.terms()[0], (ExpTerm{1.0, -1.0}));
  EXPECT_EQ(sq.terms()[1], (ExpTerm{2.0, 0.0}));
  EXPECT_EQ(sq.terms()[2], (ExpTerm{1.0, 1.0}));
}

TEST(ExpPoly, DerivativeScalesByRatePower) {
  auto p = ExpPoly::canonicalize({{2.0, 3.0}, {1.0, 0.0}});
  auto d2 = derivative(p, 2);
  ASSERT_EQ(d2.size(), 1u);
  EXPECT_EQ(d2.terms()[0], (ExpTerm{18.0, 3.0}));
  EXPECT_EQ(derivative(p, 0), p);
}

TEST(ExpPoly, EvalAndScaled) {
  auto p = ExpPoly::canonicalize({{1.0, 0.5}, {1.0, -0.5}});
  EXPECT_DOUBLE_EQ(p.eval(0.0), 2.0);
  auto s = ExpPoly::exponential(1.0, 1.0).eval_scaled(1000.0);
  EXPECT_DOUBLE_EQ(s.mantissa, 1.0);
  EXPECT_DOUBLE_EQ(s.log_offset, 1000.0);
}

TEST(ExpPoly, ScaledRatioAvoidsOverflow) {
  // (e^{x}+1)/(e^{x/2}+e^{-x/2})^2 → 1 for large x
  auto p = ExpPoly::canonicalize({{1.0, 1.0}, {1.0, 0.0}});
  auto q = ExpPoly::canonicalize({{1.0, 0.5}, {1.0, -0.5}});
  EXPECT_NEAR(kdv::scaled_ratio(p, q, 2, 2000.0), 1.0, 1e-14);
  EXPECT_EQ(kdv::scaled_ratio(ExpPoly::constant(1.0), q, 2, 4000.0), 0.0);
}

TEST(ExpPoly, ProductRuleTermExact) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_poly(rng);
    auto q = random_poly(rng);
    auto lhs = derivative(mul(p, q), 1);
    auto rhs = mul(derivative(p, 1), q) + mul(p, derivative(q, 1));
    // identical up to rounding dust in coefficients that cancel
    for (const auto& t : (lhs - rhs).terms()) EXPECT_LT(std::abs(t.coeff), 1e-12 * (1.0 + lhs.abs_coeff_sum()));
  }
}

TEST(ExpPoly, ScaledFormAgreesWithEval) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-50.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_poly(rng);
    const double x = xs(rng);
    const double v = p.eval(x);
    const auto s = p.eval_scaled(x);
    EXPECT_LE(std::abs(s.mantissa), p.abs_coeff_sum() * (1 + 1e-15));
    const double w = s.mantissa * std::exp(s.log_offset);
    if (std::isfinite(v) && std::isfinite(w) && v != 0.0) EXPECT_NEAR(w / v, 1.0, 1e-12);
  }
}
