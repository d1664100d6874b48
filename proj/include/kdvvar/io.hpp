#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kdvvar/grid.hpp"

namespace kdv::io {

/// Round-trippable text form of a double ("%.17g").
std::string format_double(double v);

/// Header row, then one comma-separated row per entry.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Two columns x,value with a header row.
void write_grid_csv(std::ostream& out, const GridFunction& u);

/// Reads the first two columns (x, value) of a CSV with a header row and
/// rebuilds the grid from the x column. Throws InvalidInput on malformed
/// rows, non-uniform spacing or a point count that is not a valid grid.
GridFunction read_grid_csv(std::istream& in);

}  // namespace kdv::io
