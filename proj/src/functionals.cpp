#include "kdvvar/functionals.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdvvar/error.hpp"
#include "kdvvar/kernels.hpp"
#include "kdvvar/soliton.hpp"
#include "spectral.hpp"

namespace kdv {

namespace {

double h2_weight(double kappa) {
  const double k2 = kappa * kappa;
  return 1.0 + k2 + k2 * k2;
}

std::vector<double> pointwise(const GridFunction& u, auto&& f) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
  return out;
}

}  // namespace

GridFunction deriv(const GridFunction& u, int order) {
  if (order < 1 || order > 4) throw InvalidInput("deriv: order must be in [1, 4]");
  const auto modes = spectral::forward(u.values());
  return {u.grid(), spectral::backward(spectral::differentiate(modes, u.grid(), order), u.size())};
}

std::vector<GridFunction> derivs_upto(const GridFunction& u, int max_order) {
  if (max_order < 0 || max_order > 4) throw InvalidInput("derivs_upto: order must be in [0, 4]");
  std::vector<GridFunction> out{u};
  if (max_order == 0) return out;
  const auto modes = spectral::forward(u.values());
  for (int o = 1; o <= max_order; ++o) {
    out.emplace_back(u.grid(),
                     spectral::backward(spectral::differentiate(modes, u.grid(), o), u.size()));
  }
  return out;
}

double integrate(const GridFunction& u) {
  return u.grid().spacing() * kernels::parallel::sum(u.values());
}

double inner(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  return u.grid().spacing() * kernels::parallel::dot(u.values(), v.values());
}

double l2_norm(const GridFunction& u) { return std::sqrt(inner(u, u)); }

double energy(int k, const GridFunction& u) {
  const double h = u.grid().spacing();
  switch (k) {
    case 2:
      return 0.5 * inner(u, u);
    case 3: {
      const auto d = derivs_upto(u, 1);
      const auto dens = pointwise(u, [&](std::size_t i) {
        return 0.5 * d[1][i] * d[1][i] - u[i] * u[i] * u[i] / 6.0;
      });
      return h * kernels::parallel::sum(dens);
    }
    case 4: {
      const auto d = derivs_upto(u, 2);
      const auto dens = pointwise(u, [&](std::size_t i) {
        const double v = u[i], vx = d[1][i], vxx = d[2][i];
        return 0.5 * vxx * vxx - (5.0 / 6.0) * v * vx * vx + (5.0 / 72.0) * v * v * v * v;
      });
      return h * kernels::parallel::sum(dens);
    }
    default:
      throw InvalidInput("energy: k must be 2, 3 or 4");
  }
}

GridFunction gradient(int k, const GridFunction& u) {
  switch (k) {
    case 2:
      return u;
    case 3: {
      const auto d = derivs_upto(u, 2);
      return {u.grid(), pointwise(u, [&](std::size_t i) { return -d[2][i] - 0.5 * u[i] * u[i]; })};
    }
    case 4: {
      const auto d = derivs_upto(u, 4);
      return {u.grid(), pointwise(u, [&](std::size_t i) {
                const double v = u[i];
                return d[4][i] + (5.0 / 3.0) * v * d[2][i] + (5.0 / 6.0) * d[1][i] * d[1][i] +
                       (5.0 / 18.0) * v * v * v;
              })};
    }
    default:
      throw InvalidInput("gradient: k must be 2, 3 or 4");
  }
}

EnergyState evaluate_energies(const GridFunction& u) {
  const auto d = derivs_upto(u, 4);
  const double h = u.grid().spacing();
  const std::size_t m = u.size();
  std::vector<double> e3(m), e4(m), g3(m), g4(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double v = u[i], vx = d[1][i], vxx = d[2][i], v4 = d[4][i];
    e3[i] = 0.5 * vx * vx - v * v * v / 6.0;
    e4[i] = 0.5 * vxx * vxx - (5.0 / 6.0) * v * vx * vx + (5.0 / 72.0) * v * v * v * v;
    g3[i] = -vxx - 0.5 * v * v;
    g4[i] = v4 + (5.0 / 3.0) * v * vxx + (5.0 / 6.0) * vx * vx + (5.0 / 18.0) * v * v * v;
  }
  EnergyState s;
  s.value = {0.5 * inner(u, u), h * kernels::parallel::sum(e3), h * kernels::parallel::sum(e4)};
  s.grad = {u, GridFunction(u.grid(), std::move(g3)), GridFunction(u.grid(), std::move(g4))};
  return s;
}

ELFit el_residual(const GridFunction& u) {
  if (!(l2_norm(u) > 0.0)) throw InvalidInput("el_residual: zero function");
  const auto g2 = gradient(2, u);
  const auto g3 = gradient(3, u);
  const auto g4 = gradient(4, u);
  const double a = inner(g2, g2), b = inner(g2, g3), c = inner(g3, g3);
  const double r2 = inner(g4, g2), r3 = inner(g4, g3);
  const double det = a * c - b * b;

  ELFit fit;
  if (det <= kGramDegeneracy * a * c) {
    fit.reduced = true;
    fit.lambda2 = 0.0;
    fit.lambda3 = r3 / c;
  } else {
    fit.lambda2 = (c * r2 - b * r3) / det;
    fit.lambda3 = (a * r3 - b * r2) / det;
  }
  const auto res = g4 - (fit.lambda2 * g2 + fit.lambda3 * g3);
  fit.residual_rel = l2_norm(res) / l2_norm(g4);
  return fit;
}

double h2_norm(const GridFunction& u) {
  const auto d = derivs_upto(u, 2);
  return std::sqrt(inner(d[0], d[0]) + inner(d[1], d[1]) + inner(d[2], d[2]));
}

double h2_distance(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  return h2_norm(u - v);
}

namespace {

struct FitProblem {
  const GridFunction* target;
  std::vector<double> speeds;
};

// Squared H² distance via Parseval; smooth in the phases, unlike the norm.
double squared_distance(const GridFunction& u, const std::vector<double>& speeds,
                        const std::vector<double>& phases) {
  const auto params = SolitonParams::make(speeds, phases);
  const auto diff = u - sample_profile(params, u.grid());
  const auto modes = spectral::forward(diff.values());
  return spectral::weighted_inner(modes, modes, u.grid(), h2_weight);
}

double nm_objective(const gsl_vector* x, void* data) {
  const auto* p = static_cast<const FitProblem*>(data);
  std::vector<double> phases(p->speeds.size());
  for (std::size_t i = 0; i < phases.size(); ++i) phases[i] = gsl_vector_get(x, i);
  return squared_distance(*p->target, p->speeds, phases);
}

std::vector<double> nelder_mead(FitProblem problem, std::vector<double> start, double step) {
  const std::size_t n = start.size();
  gsl_set_error_handler_off();
  gsl_multimin_function f{&nm_objective, n, &problem};
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* ss = gsl_vector_alloc(n);
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x, i, start[i]);
    gsl_vector_set(ss, i, step);
  }
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(s, &f, x, ss);
  for (int iter = 0; iter < 4000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_fminimizer_size(s) < 1e-13) break;
  }
  std::vector<double> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = gsl_vector_get(s->x, i);
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return best;
}

// Cyclic H² correlation of u against the reference for every grid shift.
std::vector<double> shift_correlation(const spectral::Spectrum& target, const GridFunction& ref) {
  const auto rmodes = spectral::forward(ref.values());
  spectral::Spectrum prod(target.size());
  for (std::size_t j = 0; j < prod.size(); ++j) {
    prod[j] = h2_weight(spectral::wavenumber(ref.grid(), j)) * target[j] * std::conj(rmodes[j]);
  }
  auto corr = spectral::backward(prod, ref.size());
  for (double& c : corr) c *= ref.grid().spacing();
  return corr;
}

double signed_shift(std::size_t t, std::size_t m) {
  const auto tt = static_cast<long>(t), mm = static_cast<long>(m);
  return static_cast<double>(tt > mm / 2 ? tt - mm : tt);
}

SolitonFit finish_fit(const GridFunction& u, std::vector<double> speeds, std::vector<double> start) {
  const double h = u.grid().spacing();
  auto phases = nelder_mead({&u, speeds}, std::move(start), h);
  const auto params = SolitonParams::make(speeds, phases);
  const double dist = h2_distance(u, sample_profile(params, u.grid()));
  return {std::move(speeds), std::move(phases), dist};
}

}  // namespace

SolitonFit fit_two_soliton(const GridFunction& u, double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > c1)) throw InvalidInput("fit_two_soliton: need 0 < C1 < C2");
  const Grid& g = u.grid();
  const double h = g.spacing();
  const std::size_t m = g.points;
  const auto target = spectral::forward(u.values());
  const double u_norm2 = spectral::weighted_inner(target, target, g, h2_weight);

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> start{0.0, 0.0};
  for (std::size_t j = 0; j < m; ++j) {
    const double sep = signed_shift(j, m) * h;
    const auto ref = sample_profile(SolitonParams::make({c1, c2}, {0.0, sep}), g);
    const auto rmodes = spectral::forward(ref.values());
    const double ref_norm2 = spectral::weighted_inner(rmodes, rmodes, g, h2_weight);
    const auto corr = shift_correlation(target, ref);
    for (std::size_t t = 0; t < m; ++t) {
      const double d2 = u_norm2 + ref_norm2 - 2.0 * corr[t];
      if (d2 < best) {
        best = d2;
        const double shift = signed_shift(t, m) * h;
        start = {shift, sep + shift};
      }
    }
  }
  return finish_fit(u, {c1, c2}, std::move(start));
}

SolitonFit fit_one_soliton(const GridFunction& u, double c) {
  if (!(c > 0.0)) throw InvalidInput("fit_one_soliton: need C > 0");
  const Grid& g = u.grid();
  const auto target = spectral::forward(u.values());
  const auto ref = sample_profile(SolitonParams::make({c}, {0.0}), g);
  const auto corr = shift_correlation(target, ref);
  const auto t = static_cast<std::size_t>(std::max_element(corr.begin(), corr.end()) - corr.begin());
  return finish_fit(u, {c}, {signed_shift(t, g.points) * g.spacing()});
}

}  // namespace kdv
