#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kdvvar/error.hpp"
#include "kdvvar/functionals.hpp"
#include "kdvvar/soliton.hpp"

using kdv::SolitonParams;

TEST(Soliton, ParamsValidation) {
  EXPECT_THROW(SolitonParams::make({0.0}, {0.0}), kdv::InvalidInput);
  EXPECT_THROW(SolitonParams::make({}, {}), kdv::InvalidInput);
  EXPECT_THROW(SolitonParams::make({1.0, 1.0}, {0.0, 0.0}), kdv::InvalidInput);
  EXPECT_THROW(SolitonParams::make({4.0, 1.0}, {0.0, 0.0}), kdv::InvalidInput);
  EXPECT_THROW(SolitonParams::make({1.0}, {0.0, 1.0}), kdv::InvalidInput);
  EXPECT_THROW(SolitonParams::make({1.0}, {std::nan("")}), kdv::InvalidInput);
}

TEST(Soliton, TauOneSoliton) {
  auto k = kdv::tau(SolitonParams::make({1.0}, {0.0}));
  EXPECT_DOUBLE_EQ(k.tau().eval(0.0), 2.0);
  ASSERT_EQ(k.tau().size(), 2u);
}

TEST(Soliton, TauTwoSolitonRates) {
  auto k = kdv::tau(SolitonParams::make({1.0, 4.0}, {0.0, 0.0}));
  ASSERT_EQ(k.tau().size(), 4u);
  const double want[] = {-1.5, -0.5, 0.5, 1.5};
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(k.tau().terms()[i].rate, want[i]);
}

TEST(Soliton, TooManySolitons) {
  std::vector<double> c, g;
  for (int i = 1; i <= 9; ++i) {
    c.push_back(0.1 * i);
    g.push_back(0.0);
  }
  EXPECT_THROW(kdv::tau(SolitonParams::make(c, g)), kdv::Unsupported);
}

TEST(Soliton, PeakAndTail) {
  for (double c : {0.25, 1.0, 3.0}) {
    auto p = SolitonParams::make({c}, {1.5});
    EXPECT_NEAR(kdv::profile(p, 1.5, 0)[0], 3.0 * c, 1e-14 * c);
  }
  auto p = SolitonParams::make({1.0}, {0.0});
  const double r = kdv::profile(p, 30.0, 0)[0] / kdv::profile(p, 29.0, 0)[0];
  EXPECT_NEAR(r, std::exp(-1.0), 0.01 * std::exp(-1.0));
  EXPECT_EQ(kdv::profile(p, 5000.0, 0)[0], 0.0);
}

TEST(Soliton, DerivativesMatchSechClosedForm) {
  auto p = SolitonParams::make({2.0}, {0.0});
  const double k = std::sqrt(2.0) / 2.0;
  for (double x : {-3.0, -0.4, 0.0, 1.1, 6.0}) {
    const double s = 1.0 / std::cosh(k * x), t = std::tanh(k * x);
    const auto v = kdv::profile(p, x, 2);
    EXPECT_NEAR(v[0], 12 * k * k * s * s, 1e-13);
    EXPECT_NEAR(v[1], -24 * k * k * k * s * s * t, 1e-13);
    EXPECT_NEAR(v[2], 24 * std::pow(k, 4) * s * s * (3 * t * t - 1), 1e-12);
  }
}

TEST(Soliton, ClosedFormEnergy) {
  const std::vector<double> one{1.0}, two{1.0, 4.0};
  EXPECT_DOUBLE_EQ(kdv::closed_form_energy(2, one), 12.0);
  EXPECT_DOUBLE_EQ(kdv::closed_form_energy(3, one), -7.2);
  EXPECT_NEAR(kdv::closed_form_energy(4, two), 4644.0 / 7.0, 1e-10);
}

TEST(Soliton, Evolve) {
  auto p = SolitonParams::make({1.0, 4.0}, {0.0, 1.0});
  auto same = kdv::evolve(p, 0.0);
  EXPECT_EQ(same.phases, p.phases);
  auto q = kdv::evolve(SolitonParams::make({1.0}, {0.0}), 5.0);
  EXPECT_DOUBLE_EQ(q.phases[0], 5.0);
}

TEST(Soliton, QuadratureMatchesClosedForm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> cs(0.25, 6.0), gs(-5.0, 5.0);
  const kdv::Grid grid{};
  for (int trial = 0; trial < 8; ++trial) {
    double c1 = cs(rng), c2 = cs(rng);
    if (c1 > c2) std::swap(c1, c2);
    if (c2 - c1 < 1e-3) continue;
    auto p = SolitonParams::make({c1, c2}, {gs(rng), gs(rng)});
    auto u = kdv::sample_profile(p, grid);
    for (int k = 2; k <= 4; ++k) {
      const double want = kdv::closed_form_energy(k, p.speeds);
      EXPECT_NEAR(kdv::energy(k, u), want, 1e-8 * std::abs(want)) << "k=" << k;
    }
  }
}

TEST(Soliton, TwoSolitonEulerLagrange) {
  auto p = SolitonParams::make({1.0, 4.0}, {0.0, 0.0});
  auto fit = kdv::el_residual(kdv::sample_profile(p, kdv::Grid{}));
  EXPECT_LT(fit.residual_rel, 1e-6);
  EXPECT_NEAR(fit.lambda2, -4.0, 4e-6);
  EXPECT_NEAR(fit.lambda3, -5.0, 5e-6);
}

TEST(Soliton, SeparationDefect) {
  const kdv::Grid grid{};
  const double near = kdv::separation_defect(1.0, 4.0, 0.0, 0.0, grid);
  EXPECT_GT(near, 0.1);
  EXPECT_LT(kdv::separation_defect(1.0, 4.0, -20.0, 20.0, grid), 1e-4);
  EXPECT_THROW(kdv::separation_defect(1.0, 4.0, -50.0, 20.0, grid), kdv::GridError);
}

TEST(Soliton, SampledDerivativeOrders) {
  auto p = SolitonParams::make({1.0, 4.0}, {-2.0, 3.0});
  const kdv::Grid grid{};
  auto u = kdv::sample_profile(p, grid);
  auto u3 = kdv::sample_profile(p, grid, 3);
  auto d3 = kdv::deriv(u, 3);
  for (std::size_t i = 0; i < grid.points; i += 97) EXPECT_NEAR(u3[i], d3[i], 1e-8);
}
