#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kdvvar/error.hpp"
#include "kdvvar/regime.hpp"
#include "kdvvar/soliton.hpp"

namespace rg = kdv::regime;

TEST(Regime, MuConstant) {
  EXPECT_NEAR(rg::mu_const(), 0.11447142425533318678, 1e-16);
  EXPECT_NEAR(rg::mu_const() * std::pow(12.0, 5.0 / 3.0), 7.2, 1e-14);
}

TEST(Regime, ClassifyExamples) {
  auto p1 = rg::classify(12.0, -7.2);
  EXPECT_EQ(p1.regime, rg::Regime::Case1);
  ASSERT_EQ(p1.speeds.size(), 1u);
  EXPECT_NEAR(p1.speeds[0], 1.0, 1e-12);

  auto p2 = rg::classify(108.0, -237.6);
  EXPECT_EQ(p2.regime, rg::Regime::Case2);
  ASSERT_EQ(p2.speeds.size(), 2u);
  EXPECT_NEAR(p2.speeds[0], 1.0, 1e-10);
  EXPECT_NEAR(p2.speeds[1], 4.0, 1e-10);

  EXPECT_EQ(rg::classify(12.0, -1.0).regime, rg::Regime::Case3);
  EXPECT_TRUE(rg::classify(12.0, -1.0).speeds.empty());
  EXPECT_EQ(rg::classify(12.0, -8.0).regime, rg::Regime::Infeasible);
  EXPECT_EQ(rg::classify(-1.0, 0.0).regime, rg::Regime::Infeasible);
  EXPECT_EQ(rg::classify(0.0, 0.0).regime, rg::Regime::Infeasible);
}

TEST(Regime, UpperBoundaryIsCase3) {
  const double a = 50.0;
  const double b = -rg::mu_const() * std::pow(a, 5.0 / 3.0) / std::pow(2.0, 2.0 / 3.0);
  EXPECT_EQ(rg::classify(a, b).regime, rg::Regime::Case3);
  EXPECT_EQ(rg::classify(a, b * (1 + 1e-6)).regime, rg::Regime::Case2);
}

TEST(Regime, ForwardInvertRoundTrip) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> c(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    double c1 = c(rng), c2 = c(rng);
    if (c1 > c2) std::swap(c1, c2);
    if (c2 / c1 < 1.01) continue;
    const std::vector<double> s{c1, c2};
    const auto [a, b] = rg::forward(s);
    const auto [r1, r2] = rg::invert(a, b);
    EXPECT_NEAR(r1, c1, 1e-10 * c1);
    EXPECT_NEAR(r2, c2, 1e-10 * c2);
  }
}

TEST(Regime, InvertOutsideCase2) {
  EXPECT_THROW(rg::invert(12.0, -1.0), kdv::DomainError);
  EXPECT_THROW(rg::invert(12.0, -7.2), kdv::DomainError);
  EXPECT_THROW(rg::forward(std::vector<double>{2.0, 1.0}), kdv::InvalidInput);
}

TEST(Regime, JValue) {
  EXPECT_EQ(*rg::j_value(12.0, -7.2), kdv::closed_form_energy(4, std::vector<double>{1.0}));
  EXPECT_NEAR(*rg::j_value(108.0, -237.6), 4644.0 / 7.0, 1e-8);
  EXPECT_FALSE(rg::j_value(12.0, -1.0).has_value());
  EXPECT_THROW(rg::j_value(12.0, -8.0), kdv::DomainError);
}

TEST(Regime, ToString) {
  EXPECT_EQ(rg::to_string(rg::Regime::Case2), "Case2");
  EXPECT_EQ(rg::to_string(rg::Regime::Infeasible), "Infeasible");
}
