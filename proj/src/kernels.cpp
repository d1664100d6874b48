#include "kdvvar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdvvar/error.hpp"

namespace kdv::kernels {

namespace {

constexpr std::size_t kChunk = 1024;
constexpr double kFeasibleSlack = 1e-12;

// Prefix sums of the periodic extension a[-half .. M-1+half].
std::vector<double> periodic_prefix(std::span<const double> a, std::size_t half) {
  const std::size_t m = a.size();
  std::vector<double> prefix(m + 2 * half + 1, 0.0);
  for (std::size_t k = 0; k < m + 2 * half; ++k) {
    const std::size_t j = (k + m - (half % m)) % m;
    prefix[k + 1] = prefix[k] + a[j];
  }
  return prefix;
}

inline double pow3(double x) { return x * x * x; }
inline double pow5(double x) { return x * x * x * x * x; }
inline double pow7(double x) { return pow5(x) * x * x; }

struct PowerSums {
  double s3, s5, s7;
};

// Enumerates k_{depth} ≤ cap recursively and keeps the lexicographically first
// best direction.
void lattice_recurse(int depth, int n, int cap, int resolution, double ratio15, PowerSums acc,
                     std::vector<int>& idx, LatticeBest& best) {
  if (depth == n) {
    // minimal feasible scale t = B/S5^{1/5} must satisfy t³S3 ≤ A³
    if (ratio15 * pow5(acc.s3) > pow3(acc.s5) * (1.0 + kFeasibleSlack)) return;
    const double score = pow5(acc.s7) / pow7(acc.s5);
    if (!best.found || score < best.score) {
      best.found = true;
      best.score = score;
      best.index = idx;
    }
    return;
  }
  for (int k = 0; k <= cap; ++k) {
    const double r = static_cast<double>(k) / resolution;
    const double r3 = r * r * r;
    const double r5 = r3 * r * r;
    idx[depth - 1] = k;
    lattice_recurse(depth + 1, n, k, resolution, ratio15,
                    {acc.s3 + r3, acc.s5 + r5, acc.s7 + r5 * r * r}, idx, best);
  }
}

void check_lattice_args(double ratio_ba, int n, int resolution) {
  if (n < 1 || n > 6) throw InvalidInput("lattice_search: n must be in [1, 6]");
  if (resolution < 1) throw InvalidInput("lattice_search: resolution must be positive");
  if (!(ratio_ba > 0.0) || !std::isfinite(ratio_ba)) throw InvalidInput("lattice_search: bad ratio");
}

LatticeBest lattice_slice(double ratio15, int n, int resolution, int k2) {
  LatticeBest best;
  std::vector<int> idx(static_cast<std::size_t>(n - 1), 0);
  const double r = static_cast<double>(k2) / resolution;
  const double r3 = r * r * r;
  const double r5 = r3 * r * r;
  idx[0] = k2;
  lattice_recurse(2, n, k2, resolution, ratio15, {1.0 + r3, 1.0 + r5, 1.0 + r5 * r * r}, idx, best);
  return best;
}

bool better(const LatticeBest& cand, const LatticeBest& cur) {
  if (!cand.found) return false;
  if (!cur.found) return true;
  if (cand.score != cur.score) return cand.score < cur.score;
  return cand.index < cur.index;
}

}  // namespace

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sum(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

std::vector<double> window_sums(std::span<const double> a, std::size_t half) {
  const std::size_t m = a.size();
  if (m == 0) return {};
  if (2 * half + 1 >= m) return std::vector<double>(m, sum(a));
  const auto prefix = periodic_prefix(a, half);
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = prefix[i + 2 * half + 1] - prefix[i];
  return out;
}

long masked_argmax(std::span<const double> a, std::span<const unsigned char> allowed) {
  long best = -1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!allowed[i]) continue;
    if (best < 0 || a[i] > a[static_cast<std::size_t>(best)]) best = static_cast<long>(i);
  }
  return best;
}

LatticeBest lattice_search(double ratio_ba, int n, int resolution) {
  check_lattice_args(ratio_ba, n, resolution);
  const double ratio15 = std::pow(ratio_ba, 15);
  if (n == 1) {
    LatticeBest best;
    if (ratio15 <= 1.0 + kFeasibleSlack) best = {true, 1.0, {}};
    return best;
  }
  LatticeBest best;
  for (int k2 = 0; k2 <= resolution; ++k2) {
    auto cand = lattice_slice(ratio15, n, resolution, k2);
    if (better(cand, best)) best = std::move(cand);
  }
  return best;
}

}  // namespace serial

namespace parallel {

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t chunks = (a.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  const auto nchunks = static_cast<long>(chunks);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < nchunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(a.size(), lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    partial[static_cast<std::size_t>(c)] = s;
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

double sum(std::span<const double> a) {
  const std::size_t chunks = (a.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  const auto nchunks = static_cast<long>(chunks);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < nchunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(a.size(), lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i];
    partial[static_cast<std::size_t>(c)] = s;
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

std::vector<double> window_sums(std::span<const double> a, std::size_t half) {
  const std::size_t m = a.size();
  if (m == 0) return {};
  if (2 * half + 1 >= m) return std::vector<double>(m, sum(a));
  const auto prefix = periodic_prefix(a, half);
  std::vector<double> out(m);
  const auto mm = static_cast<long>(m);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < mm; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = prefix[u + 2 * half + 1] - prefix[u];
  }
  return out;
}

long masked_argmax(std::span<const double> a, std::span<const unsigned char> allowed) {
  const std::size_t chunks = (a.size() + kChunk - 1) / kChunk;
  std::vector<long> partial(chunks, -1);
  const auto nchunks = static_cast<long>(chunks);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < nchunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(a.size(), lo + kChunk);
    long best = -1;
    for (std::size_t i = lo; i < hi; ++i) {
      if (!allowed[i]) continue;
      if (best < 0 || a[i] > a[static_cast<std::size_t>(best)]) best = static_cast<long>(i);
    }
    partial[static_cast<std::size_t>(c)] = best;
  }
  long best = -1;
  for (long p : partial) {
    if (p < 0) continue;
    if (best < 0 || a[static_cast<std::size_t>(p)] > a[static_cast<std::size_t>(best)]) best = p;
  }
  return best;
}

LatticeBest lattice_search(double ratio_ba, int n, int resolution) {
  check_lattice_args(ratio_ba, n, resolution);
  if (n == 1) return serial::lattice_search(ratio_ba, n, resolution);
  const double ratio15 = std::pow(ratio_ba, 15);
  std::vector<LatticeBest> slices(static_cast<std::size_t>(resolution) + 1);
#pragma omp parallel for schedule(dynamic, 4)
  for (int k2 = 0; k2 <= resolution; ++k2) {
    slices[static_cast<std::size_t>(k2)] = lattice_slice(ratio15, n, resolution, k2);
  }
  LatticeBest best;
  for (auto& s : slices) {
    if (better(s, best)) best = std::move(s);
  }
  return best;
}

}  // namespace parallel

}  // namespace kdv::kernels
