#pragma once

#include <array>
#include <vector>

#include "kdvvar/grid.hpp"

namespace kdv {

/// Spectral derivative on the periodic extension of [−L, L); order 1 … 4.
GridFunction deriv(const GridFunction& u, int order);

/// ψ, ψ', …, ψ^{(max_order)} from a single forward transform.
std::vector<GridFunction> derivs_upto(const GridFunction& u, int max_order);

/// Periodic trapezoid rule h·Σu_i.
double integrate(const GridFunction& u);

/// Discrete L² inner product h·Σu_i v_i.
double inner(const GridFunction& u, const GridFunction& v);
double l2_norm(const GridFunction& u);

/// E2 = ∫½u², E3 = ∫(½u_x² − u³/6), E4 = ∫(½u_xx² − (5/6)u u_x² + (5/72)u⁴).
double energy(int k, const GridFunction& u);

/// L² gradients:
///   ∇E2 = u
///   ∇E3 = −u_xx − u²/2
///   ∇E4 = u_xxxx + (5/3)u u_xx + (5/6)u_x² + (5/18)u³
GridFunction gradient(int k, const GridFunction& u);

/// E2, E3, E4 and their gradients at one point, sharing the transforms.
struct EnergyState {
  std::array<double, 3> value{};        // E2, E3, E4
  std::array<GridFunction, 3> grad{};   // ∇E2, ∇E3, ∇E4
};
EnergyState evaluate_energies(const GridFunction& u);

/// Least-squares multipliers for ∇E4 ≈ λ2∇E2 + λ3∇E3.
struct ELFit {
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double residual_rel = 0.0;
  /// ∇E2 ∥ ∇E3 to working precision: λ2 is pinned to 0 and only λ3 fitted.
  bool reduced = false;
};

/// Relative Gram-determinant threshold below which the fit is reduced.
inline constexpr double kGramDegeneracy = 1e-8;

ELFit el_residual(const GridFunction& u);

/// (Σ_{i=0..2} ‖∂^i u‖²)^{1/2} with spectral derivatives.
double h2_norm(const GridFunction& u);
double h2_distance(const GridFunction& u, const GridFunction& v);

/// Best-fitting member of S(C1, C2) (or S(C) for one speed).
struct SolitonFit {
  std::vector<double> speeds;
  std::vector<double> phases;
  double distance = 0.0;
};

/// Minimises ‖u − ψ_{C1,C2;γ1,γ2}‖_{H²} over the phases: a scan over all
/// grid separations (translations handled by FFT correlation) followed by
/// Nelder–Mead refinement. Requires 0 < C1 < C2.
SolitonFit fit_two_soliton(const GridFunction& u, double c1, double c2);

/// Same for a single soliton of speed C.
SolitonFit fit_one_soliton(const GridFunction& u, double c);

}  // namespace kdv
