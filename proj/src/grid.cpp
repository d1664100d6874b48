#include "kdvvar/grid.hpp"

#include <algorithm>
#include <cmath>

#include "kdvvar/error.hpp"

namespace kdv {

void Grid::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidInput("grid half-width must be positive and finite");
  }
  if (points < 256 || (points & (points - 1)) != 0) {
    throw InvalidInput("grid point count must be a power of two >= 256");
  }
}

GridFunction::GridFunction(Grid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  grid_.validate();
  if (samples_.size() != grid_.points) throw GridError("sample count does not match grid");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw InvalidInput("grid function samples must be finite");
  }
}

GridFunction::GridFunction(Grid grid) : GridFunction(grid, std::vector<double>(grid.points, 0.0)) {}

GridFunction GridFunction::sample(Grid grid, const std::function<double(double)>& f) {
  grid.validate();
  std::vector<double> v(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) v[i] = f(grid.x(i));
  return {grid, std::move(v)};
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::compactly_supported() const {
  if (samples_.empty()) return true;
  const double tol = 1e-10 * max_abs();
  return std::abs(samples_.front()) <= tol && std::abs(samples_.back()) <= tol;
}

GridFunction GridFunction::shifted(long steps) const {
  const auto m = static_cast<long>(samples_.size());
  std::vector<double> out(samples_.size());
  for (long i = 0; i < m; ++i) {
    const long src = ((i - steps) % m + m) % m;
    out[static_cast<std::size_t>(i)] = samples_[static_cast<std::size_t>(src)];
  }
  return {grid_, std::move(out)};
}

void require_same_grid(const GridFunction& u, const GridFunction& v) {
  if (!(u.grid() == v.grid())) throw GridError("grid functions live on different grids");
}

GridFunction operator+(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u[i] + v[i];
  return {u.grid(), std::move(out)};
}

GridFunction operator-(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u[i] - v[i];
  return {u.grid(), std::move(out)};
}

GridFunction operator*(double s, const GridFunction& u) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * u[i];
  return {u.grid(), std::move(out)};
}

}  // namespace kdv
