// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kdvvar/kernels.hpp"

namespace ks = kdv::kernels::serial;
namespace kp = kdv::kernels::parallel;

namespace {

std::vector<double> data(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

template <bool Parallel>
void BM_Dot(benchmark::State& st) {
  const auto a = data(static_cast<std::size_t>(st.range(0))), b = data(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? kp::dot(a, b) : ks::dot(a, b));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_WindowSums(benchmark::State& st) {
  const auto a = data(static_cast<std::size_t>(st.range(0)));
  const auto half = static_cast<std::size_t>(st.range(0) / 16);
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? kp::window_sums(a, half) : ks::window_sums(a, half));
}

template <bool Parallel>
void BM_Lattice(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) {
    benchmark::DoNotOptimize(Parallel ? kp::lattice_search(0.95, n, 120) : ks::lattice_search(0.95, n, 120));
  }
}

}  // namespace

BENCHMARK(BM_Dot<false>)->Arg(2048)->Arg(1 << 20);
BENCHMARK(BM_Dot<true>)->Arg(2048)->Arg(1 << 20);
BENCHMARK(BM_WindowSums<false>)->Arg(2048)->Arg(1 << 16);
BENCHMARK(BM_WindowSums<true>)->Arg(2048)->Arg(1 << 16);
BENCHMARK(BM_Lattice<false>)->Arg(3)->Arg(4);
BENCHMARK(BM_Lattice<true>)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
