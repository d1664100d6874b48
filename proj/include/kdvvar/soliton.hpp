#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "kdvvar/exppoly.hpp"
#include "kdvvar/grid.hpp"

namespace kdv {

/// Speeds 0 < C_1 < … < C_N and phases γ_1 … γ_N of an N-soliton profile.
struct SolitonParams {
  std::vector<double> speeds;
  std::vector<double> phases;

  /// Validating constructor; throws InvalidInput on violated invariants.
  static SolitonParams make(std::vector<double> speeds, std::vector<double> phases);
  [[nodiscard]] std::size_t size() const { return speeds.size(); }
  void validate() const;
};

/// Wronskian tau-function with its exact derivatives, plus the numerators of
/// the profile derivatives in rational form:
///   ψ^{(n)} = 12 · numerator(n) / τ^{n+2},   n = 0 … 4.
///
/// Convention: y_j = e^{η_j} + (−1)^{j−1} e^{−η_j} with η_j = (√C_j/2)(x − γ_j)
/// and ψ = 12 (log τ)''. This is the normalisation under which the single
/// soliton is 3C sech²((√C/2)(x − γ)) and E_k(ψ) = (−1)^k 36/(2k−1) Σ C_j^{(2k−1)/2}.
class ProfileKernel {
 public:
  static constexpr int kMaxTauOrder = 6;
  static constexpr int kMaxProfileOrder = 4;
  static constexpr std::size_t kMaxSolitons = 8;

  explicit ProfileKernel(const SolitonParams& params);

  [[nodiscard]] const ExpPoly& tau() const { return tau_[0]; }
  [[nodiscard]] const ExpPoly& tau_derivative(int order) const;
  [[nodiscard]] const ExpPoly& numerator(int order) const;

  [[nodiscard]] double psi(double x, int order = 0) const;
  /// ψ, ψ', …, ψ^{(max_order)} at x.
  [[nodiscard]] std::vector<double> psi_upto(double x, int max_order) const;

 private:
  std::array<ExpPoly, kMaxTauOrder + 1> tau_;
  std::array<ExpPoly, kMaxProfileOrder + 1> numer_;
};

/// Builds the tau kernel. Throws Unsupported for N > 8.
ProfileKernel tau(const SolitonParams& params);

/// ψ(x), ψ'(x), …, ψ^{(max_order)}(x); max_order ≤ 4.
std::vector<double> profile(const SolitonParams& params, double x, int max_order);

/// Samples ψ^{(order)} of the profile on a grid.
GridFunction sample_profile(const SolitonParams& params, const Grid& grid, int order = 0);

/// (−1)^k · 36/(2k−1) · Σ C_j^{(2k−1)/2}.
double closed_form_energy(int k, std::span<const double> speeds);

/// Phases advanced by C_j·t.
SolitonParams evolve(const SolitonParams& params, double t);

/// Asymptotic centres of the two humps of ψ_{C1,C2;γ1,γ2} once they are well
/// separated. The Wronskian phases are offset from the hump centres by the
/// interaction shift ±atanh(k1/k2)/k_j, k_j = √C_j/2, with the sign set by the
/// ordering of γ1 and γ2.
std::pair<double, double> asymptotic_centers(double c1, double c2, double gamma1, double gamma2);

/// H² distance between ψ_{C1,C2;γ1,γ2} and the sum of the two single
/// solitons sitting at its asymptotic centres. Throws GridError when either
/// phase is closer than 30/√C1 to the grid boundary.
double separation_defect(double c1, double c2, double gamma1, double gamma2, const Grid& grid);

}  // namespace kdv
