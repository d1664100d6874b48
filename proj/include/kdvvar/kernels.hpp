#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel; the two must
// agree (reductions to rounding, argmin/argmax exactly). The parallel
// versions reduce over fixed-size chunks in index order, so results do not
// depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

namespace kdv::kernels {

/// Best point of the power-sum lattice search: ratios r_1 = 1 ≥ r_2 ≥ … ≥ r_n
/// on the lattice {0, 1/res, …, 1}, ranked by the scale-free objective
/// (Σr⁷)⁵/(Σr⁵)⁷ among directions whose minimal feasible scale meets the
/// cube-sum cap. `found` is false when no lattice direction is feasible.
struct LatticeBest {
  bool found = false;
  double score = 0.0;
  std::vector<int> index;  // lattice indices k_2 … k_n
};

namespace serial {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
/// out[i] = Σ_{|j−i| ≤ half} a[j mod M] (periodic windows).
std::vector<double> window_sums(std::span<const double> a, std::size_t half);
/// Index of the first maximum among entries with allowed[i] != 0; −1 if none.
long masked_argmax(std::span<const double> a, std::span<const unsigned char> allowed);
LatticeBest lattice_search(double ratio_ba, int n, int resolution);
}  // namespace serial

namespace parallel {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
std::vector<double> window_sums(std::span<const double> a, std::size_t half);
long masked_argmax(std::span<const double> a, std::span<const unsigned char> allowed);
LatticeBest lattice_search(double ratio_ba, int n, int resolution);
}  // namespace parallel

}  // namespace kdv::kernels
