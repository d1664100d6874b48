#include "kdvvar/massdecomp.hpp"

#include <cmath>

#include "kdvvar/error.hpp"
#include "kdvvar/functionals.hpp"
#include "kdvvar/kernels.hpp"

namespace kdv {

namespace {

std::size_t half_window(const Grid& g, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("window radius must be positive");
  return static_cast<std::size_t>(std::floor(r / g.spacing() + 1e-9));
}

}  // namespace

Density density(const GridFunction& u) {
  const auto d = derivs_upto(u, 2);
  std::vector<double> rho(u.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    rho[i] = d[0][i] * d[0][i] + d[1][i] * d[1][i] + d[2][i] * d[2][i];
  }
  GridFunction f(u.grid(), std::move(rho));
  const double total = integrate(f);
  return {std::move(f), total};
}

double vanishing_metric(const Density& d, double r) {
  const auto half = half_window(d.rho.grid(), r);
  const auto w = kernels::parallel::window_sums(d.rho.values(), half);
  double best = 0.0;
  for (double v : w) best = std::max(best, v);
  return d.rho.grid().spacing() * best;
}

Extraction extract_concentrations(const Density& d, double r, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("extract_concentrations: eps must be positive");
  const Grid& g = d.rho.grid();
  const std::size_t m = g.points;
  const double h = g.spacing();
  const auto half = half_window(g, r);
  const auto exclusion = static_cast<std::size_t>(std::floor(2.0 * r / h + 1e-9));

  std::vector<double> work(d.rho.values().begin(), d.rho.values().end());
  std::vector<unsigned char> allowed(m, 1);
  Extraction out;
  while (d.total_mass > 0.0) {
    const auto w = kernels::parallel::window_sums(work, half);
    const long best = kernels::parallel::masked_argmax(w, allowed);
    if (best < 0) break;
    const auto c = static_cast<std::size_t>(best);
    const double mass = h * w[c];
    if (!(mass > 0.0) || mass < eps * d.total_mass) break;
    out.sites.push_back({g.x(c), r, mass});
    for (std::size_t k = 0; k <= std::min(half, m / 2); ++k) {
      work[(c + k) % m] = 0.0;
      work[(c + m - k) % m] = 0.0;
    }
    for (std::size_t k = 0; k <= std::min(exclusion, m / 2); ++k) {
      allowed[(c + k) % m] = 0;
      allowed[(c + m - k) % m] = 0;
    }
  }
  out.residual_mass = h * kernels::parallel::sum(work);
  return out;
}

double default_radius(double c_min) {
  if (!(c_min > 0.0)) throw InvalidInput("default_radius: speed must be positive");
  return 10.0 / std::sqrt(c_min);
}

}  // namespace kdv
