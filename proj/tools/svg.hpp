#pragma once

#include <string>
#include <vector>

namespace kdvtool {

/// Polyline of ys against xs; log10 scale on y when log_y (non-positive
/// values are dropped).
std::string line_plot(const std::string& title, const std::vector<double>& xs, const std::vector<double>& ys,
                      bool log_y);

/// Raster of regime codes (0 infeasible, 1…3 the cases) over the a–b box.
std::string regime_raster(const std::vector<std::vector<int>>& codes, double a_min, double a_max, double b_min,
                          double b_max);

}  // namespace kdvtool
