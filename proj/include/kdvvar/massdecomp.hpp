#pragma once

#include <vector>

#include "kdvvar/grid.hpp"

namespace kdv {

/// ρ = u² + u_x² + u_xx² and its integral.
struct Density {
  GridFunction rho;
  double total_mass = 0.0;
};

struct ConcentrationSite {
  double center = 0.0;
  double radius = 0.0;
  double mass = 0.0;
};

struct Extraction {
  std::vector<ConcentrationSite> sites;
  double residual_mass = 0.0;
};

Density density(const GridFunction& u);

/// sup_y ∫_{|x−y| ≤ r} ρ over grid centres (periodic windows).
double vanishing_metric(const Density& d, double r);

/// Greedy extraction: take the heaviest window of radius r, remove its mass,
/// forbid further centres within 2r of it, repeat while the heaviest window
/// still holds at least eps·total_mass. Site masses plus the residual add up
/// to the total mass.
Extraction extract_concentrations(const Density& d, double r, double eps);

/// 10/√C, the radius used when none is given.
double default_radius(double c_min);

}  // namespace kdv
