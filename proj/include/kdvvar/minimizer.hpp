#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kdvvar/functionals.hpp"
#include "kdvvar/grid.hpp"
#include "kdvvar/massdecomp.hpp"
#include "kdvvar/regime.hpp"

namespace kdv {

enum class InitKind { scaled_sech, soliton_guess, perturbed };

struct MinimizeConfig {
  double a = 0.0;
  double b = 0.0;
  Grid grid{};
  InitKind init = InitKind::perturbed;
  /// Soliton used by soliton_guess and as the base of perturbed. Empty speeds
  /// mean "the speeds classify(a, b) recovers"; empty phases mean all zero.
  std::vector<double> guess_speeds;
  std::vector<double> guess_phases;
  std::uint64_t seed = 0;
  double amplitude = 0.05;
  double step0 = 1e-2;
  /// Stop once ‖∇E4 − λ2∇E2 − λ3∇E3‖ ≤ grad_tol·‖∇E4‖ (L² multipliers).
  double grad_tol = 1e-7;
  int max_iters = 5000;
  /// Case3 only: run the concentration diagnostic every this many iterations.
  int checkpoint_every = 500;
  /// Radius for the concentration diagnostic; 0 picks 10/√C.
  double site_radius = 0.0;
  double site_eps = 0.02;

  /// Throws InvalidInput on non-positive tolerances, steps or iteration caps.
  void validate() const;
};

struct IterationRecord {
  int iter = 0;
  double e2 = 0.0;
  double e3 = 0.0;
  double e4 = 0.0;
  double grad_norm = 0.0;
};

struct Checkpoint {
  int iter = 0;
  double e4 = 0.0;
  std::vector<ConcentrationSite> sites;
  /// Periodic distance between the two heaviest sites; 0 with fewer than two.
  double separation = 0.0;
};

struct MinimizeResult {
  GridFunction final;
  regime::ConstraintPoint point;
  std::vector<IterationRecord> history;
  std::vector<Checkpoint> checkpoints;
  ELFit el;
  std::optional<SolitonFit> fitted;
  bool converged = false;
  /// "converged", "max_iters" or "stagnation".
  std::string stop_reason;

  [[nodiscard]] std::vector<double> e4_history() const;
};

/// Newton iteration on (E2(v) − a, E3(v) − b) = 0 along
/// v = u + s1∇E2(u) + s2∇E3(u). Tolerance 1e−11·max(1, |a|, |b|), at most 50
/// steps. Throws InvalidInput for u = 0 and ProjectionFailure if Newton stalls.
GridFunction project_to_constraints(const GridFunction& u, double a, double b);

/// Projected descent for E4 on {E2 = a, E3 = b}. Throws DomainError when
/// (a, b) is infeasible.
MinimizeResult minimize(const MinimizeConfig& cfg);

/// The scaled_sech starting profile α sech²(βx) with E2 = a, E3 = b.
GridFunction scaled_sech(double a, double b, const Grid& grid);

}  // namespace kdv
