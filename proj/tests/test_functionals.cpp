#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kdvvar/error.hpp"
#include "kdvvar/functionals.hpp"
#include "kdvvar/soliton.hpp"

using kdv::Grid;
using kdv::GridFunction;

namespace {

GridFunction sech2(const Grid& g, double k, double x0 = 0.0) {
  return GridFunction::sample(g, [=](double x) {
    const double s = 1.0 / std::cosh(k * (x - x0));
    return s * s;
  });
}

// Sum of a few Gaussians with random centres, widths and signs.
GridFunction smooth_random(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-10.0, 10.0), w(1.0, 3.0), a(-1.0, 2.0);
  std::vector<std::array<double, 3>> bumps;
  for (int i = 0; i < 4; ++i) bumps.push_back({c(rng), w(rng), a(rng)});
  return GridFunction::sample(g, [&](double x) {
    double s = 0.0;
    for (const auto& b : bumps) s += b[2] * std::exp(-std::pow((x - b[0]) / b[1], 2));
    return s;
  });
}

}  // namespace

TEST(Grid, Validation) {
  EXPECT_NO_THROW((Grid{60.0, 2048}.validate()));
  EXPECT_THROW((Grid{60.0, 1000}.validate()), kdv::InvalidInput);
  EXPECT_THROW((Grid{60.0, 128}.validate()), kdv::InvalidInput);
  EXPECT_THROW((Grid{0.0, 256}.validate()), kdv::InvalidInput);
}

TEST(Grid, MismatchedGrids) {
  GridFunction u(Grid{60.0, 256}), v(Grid{60.0, 512});
  EXPECT_THROW(u + v, kdv::GridError);
  EXPECT_THROW(kdv::inner(u, v), kdv::GridError);
}

TEST(Functionals, DerivativeOfEvenIsZeroAtOrigin) {
  const Grid g{};
  auto d = kdv::deriv(sech2(g, 0.5), 1);
  EXPECT_NEAR(d[g.points / 2], 0.0, 1e-10);
  EXPECT_THROW(kdv::deriv(sech2(g, 0.5), 5), kdv::InvalidInput);
}

TEST(Functionals, Integrate) {
  const Grid g{};
  EXPECT_NEAR(kdv::integrate(sech2(g, 0.5)), 4.0, 1e-10);
  auto u = sech2(g, 0.5), v = sech2(g, 1.0, 3.0);
  EXPECT_NEAR(kdv::integrate(2.0 * u - 3.0 * v), 2.0 * kdv::integrate(u) - 3.0 * kdv::integrate(v), 1e-13);
}

TEST(Functionals, SingleSolitonEnergies) {
  auto u = kdv::sample_profile(kdv::SolitonParams::make({1.0}, {0.0}), Grid{});
  EXPECT_NEAR(kdv::energy(2, u), 12.0, 1e-8);
  EXPECT_NEAR(kdv::energy(3, u), -7.2, 1e-8);
  EXPECT_NEAR(kdv::energy(4, u), 36.0 / 7.0, 1e-8);
  EXPECT_THROW(kdv::energy(5, u), kdv::InvalidInput);
}

TEST(Functionals, GradientE2IsIdentity) {
  std::mt19937_64 rng(5);
  auto u = smooth_random(Grid{}, rng);
  auto g = kdv::gradient(2, u);
  for (std::size_t i = 0; i < u.size(); ++i) ASSERT_EQ(g[i], u[i]);
}

TEST(Functionals, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(17);
  const Grid g{};
  for (int trial = 0; trial < 4; ++trial) {
    auto u = smooth_random(g, rng), v = smooth_random(g, rng);
    const double eps = 1e-5;
    for (int k = 2; k <= 4; ++k) {
      const double fd = (kdv::energy(k, u + eps * v) - kdv::energy(k, u - eps * v)) / (2 * eps);
      const double an = kdv::inner(kdv::gradient(k, u), v);
      EXPECT_NEAR(fd, an, 1e-6 * std::max(1.0, std::abs(an))) << "k=" << k;
    }
  }
}

TEST(Functionals, OneSolitonGradientE3) {
  for (double c : {0.5, 1.0, 2.0}) {
    auto u = kdv::sample_profile(kdv::SolitonParams::make({c}, {0.0}), Grid{});
    auto r = kdv::gradient(3, u) + c * u;
    EXPECT_LT(r.max_abs(), 1e-8);
  }
}

TEST(Functionals, EvaluateEnergiesAgrees) {
  auto u = kdv::sample_profile(kdv::SolitonParams::make({1.0, 2.0}, {-3.0, 4.0}), Grid{});
  auto st = kdv::evaluate_energies(u);
  for (int k = 2; k <= 4; ++k) {
    EXPECT_NEAR(st.value[k - 2], kdv::energy(k, u), 1e-12 * std::abs(st.value[k - 2]));
    EXPECT_LT((st.grad[k - 2] - kdv::gradient(k, u)).max_abs(), 1e-10);
  }
}

TEST(Functionals, OneSolitonFitIsReduced) {
  auto u = kdv::sample_profile(kdv::SolitonParams::make({1.0}, {0.0}), Grid{});
  auto fit = kdv::el_residual(u);
  EXPECT_TRUE(fit.reduced);
  EXPECT_EQ(fit.lambda2, 0.0);
  EXPECT_NEAR(fit.lambda3, -1.0, 1e-8);
  EXPECT_LT(fit.residual_rel, 1e-8);
}

TEST(Functionals, H2Distance) {
  std::mt19937_64 rng(23);
  const Grid g{};
  auto u = smooth_random(g, rng), v = smooth_random(g, rng);
  EXPECT_EQ(kdv::h2_distance(u, u), 0.0);
  EXPECT_DOUBLE_EQ(kdv::h2_distance(u, v), kdv::h2_distance(v, u));
  EXPECT_NEAR(kdv::h2_distance(u, GridFunction(g)), kdv::h2_norm(u), 1e-12 * kdv::h2_norm(u));
}

TEST(Functionals, TranslationInvariance) {
  auto u = kdv::sample_profile(kdv::SolitonParams::make({1.0, 3.0}, {0.0, 2.0}), Grid{});
  auto s = u.shifted(37);
  for (int k = 2; k <= 4; ++k) EXPECT_NEAR(kdv::energy(k, s), kdv::energy(k, u), 1e-10 * std::abs(kdv::energy(k, u)));
}

TEST(Functionals, FitTwoSolitonSelf) {
  const Grid g{};
  auto u = kdv::sample_profile(kdv::SolitonParams::make({1.0, 4.0}, {2.0, -3.0}), g);
  auto fit = kdv::fit_two_soliton(u, 1.0, 4.0);
  EXPECT_NEAR(fit.phases[0], 2.0, 1e-6);
  EXPECT_NEAR(fit.phases[1], -3.0, 1e-6);
  EXPECT_LT(fit.distance, 1e-9);
}

TEST(Functionals, FitTwoSolitonPerturbed) {
  const Grid g{};
  auto u = kdv::sample_profile(kdv::SolitonParams::make({1.0, 4.0}, {2.0, -3.0}), g);
  auto bump = GridFunction::sample(g, [](double x) { return 0.01 * std::exp(-x * x / 4.0); });
  auto fit = kdv::fit_two_soliton(u + bump, 1.0, 4.0);
  const double n = kdv::h2_norm(bump);
  EXPECT_LT(fit.distance, 2.0 * n);
  EXPECT_GT(fit.distance, 0.5 * n);
}

TEST(Functionals, FitTwoSolitonToSingleIsFar) {
  const Grid g{};
  auto u = kdv::sample_profile(kdv::SolitonParams::make({4.0}, {0.0}), g);
  auto fit = kdv::fit_two_soliton(u, 1.0, 4.0);
  auto single = kdv::sample_profile(kdv::SolitonParams::make({1.0}, {0.0}), g);
  EXPECT_GT(fit.distance, 0.5 * kdv::h2_norm(single));
  EXPECT_THROW(kdv::fit_two_soliton(u, 4.0, 1.0), kdv::InvalidInput);
}
