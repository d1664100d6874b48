#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kdv {

/// Uniform periodic grid on [−L, L): x_i = −L + i·h, h = 2L/M.
struct Grid {
  double half_width = 60.0;
  std::size_t points = 2048;

  [[nodiscard]] double spacing() const { return 2.0 * half_width / static_cast<double>(points); }
  [[nodiscard]] double x(std::size_t i) const {
    return -half_width + static_cast<double>(i) * spacing();
  }
  /// Throws InvalidInput unless M is a power of two ≥ 256 and L > 0.
  void validate() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Samples of a real function on a Grid. Immutable apart from explicit
/// construction; arithmetic returns new values.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid grid, std::vector<double> samples);
  explicit GridFunction(Grid grid);  // zero function

  static GridFunction sample(Grid grid, const std::function<double(double)>& f);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] std::span<const double> values() const { return samples_; }
  [[nodiscard]] std::size_t size() const { return samples_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return samples_[i]; }
  [[nodiscard]] double max_abs() const;

  /// Advisory: boundary samples below 1e−10·max|u|.
  [[nodiscard]] bool compactly_supported() const;

  /// Cyclic shift by `steps` grid points (positive moves the profile right).
  [[nodiscard]] GridFunction shifted(long steps) const;

  friend GridFunction operator+(const GridFunction& u, const GridFunction& v);
  friend GridFunction operator-(const GridFunction& u, const GridFunction& v);
  friend GridFunction operator*(double s, const GridFunction& u);

 private:
  Grid grid_;
  std::vector<double> samples_;
};

/// Same grid or throw GridError.
void require_same_grid(const GridFunction& u, const GridFunction& v);

}  // namespace kdv
