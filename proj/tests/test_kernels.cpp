#include <gtest/gtest.h>

#include <random>

#include "kdvvar/kernels.hpp"

namespace ks = kdv::kernels::serial;
namespace kp = kdv::kernels::parallel;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST(Kernels, DotAndSum) {
  for (std::size_t n : {0u, 1u, 7u, 1000u, 65536u}) {
    auto a = random_vec(n, 1), b = random_vec(n, 2);
    EXPECT_NEAR(ks::dot(a, b), kp::dot(a, b), 1e-12 * (1.0 + n));
    EXPECT_NEAR(ks::sum(a), kp::sum(a), 1e-12 * (1.0 + n));
  }
}

TEST(Kernels, ParallelIsDeterministic) {
  auto a = random_vec(100000, 3), b = random_vec(100000, 4);
  const double first = kp::dot(a, b);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(kp::dot(a, b), first);
}

TEST(Kernels, WindowSums) {
  auto a = random_vec(2048, 5);
  for (std::size_t half : {0u, 3u, 100u, 1023u}) {
    auto s = ks::window_sums(a, half), p = kp::window_sums(a, half);
    ASSERT_EQ(s.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(s[i], p[i], 1e-11);
  }
  // direct check at one index, with wrap-around
  auto s = ks::window_sums(a, 4);
  double direct = 0.0;
  for (long j = -4; j <= 4; ++j) direct += a[static_cast<std::size_t>((j + 2048) % 2048)];
  EXPECT_NEAR(s[0], direct, 1e-13);
}

TEST(Kernels, MaskedArgmax) {
  std::vector<double> a{1.0, 5.0, 3.0, 5.0, 2.0};
  std::vector<unsigned char> all(5, 1), some{1, 0, 1, 1, 1}, none(5, 0);
  EXPECT_EQ(ks::masked_argmax(a, all), 1);
  EXPECT_EQ(kp::masked_argmax(a, all), 1);
  EXPECT_EQ(ks::masked_argmax(a, some), 3);
  EXPECT_EQ(kp::masked_argmax(a, some), 3);
  EXPECT_EQ(ks::masked_argmax(a, none), -1);
  EXPECT_EQ(kp::masked_argmax(a, none), -1);
  auto big = random_vec(50000, 9);
  std::vector<unsigned char> mask(big.size(), 1);
  EXPECT_EQ(ks::masked_argmax(big, mask), kp::masked_argmax(big, mask));
}

TEST(Kernels, LatticeSearchAgrees) {
  for (double ratio : {0.999, 0.97, 0.93, 0.88}) {
    for (int n : {2, 3, 4}) {
      auto s = ks::lattice_search(ratio, n, 60);
      auto p = kp::lattice_search(ratio, n, 60);
      ASSERT_EQ(s.found, p.found);
      if (!s.found) continue;
      EXPECT_EQ(s.score, p.score);
      EXPECT_EQ(s.index, p.index);
    }
  }
  // far below the floor every direction fits the cap; equal parts win
  EXPECT_EQ(ks::lattice_search(0.5, 2, 60).score, 0.25);
}
