#include "kdvvar/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "kdvvar/error.hpp"

namespace kdv::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

void write_grid_csv(std::ostream& out, const GridFunction& u) {
  std::vector<std::vector<double>> rows;
  rows.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) rows.push_back({u.grid().x(i), u[i]});
  write_csv(out, {"x", "value"}, rows);
}

GridFunction read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("profile csv: empty input");
  std::vector<double> xs, vs;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string xf, vf;
    if (!std::getline(row, xf, ',') || !std::getline(row, vf, ',')) {
      throw InvalidInput("profile csv: line " + std::to_string(lineno) + " has fewer than two columns");
    }
    try {
      std::size_t px = 0, pv = 0;
      const double x = std::stod(xf, &px);
      const double v = std::stod(vf, &pv);
      if (!std::isfinite(x) || !std::isfinite(v)) throw std::invalid_argument("non-finite");
      xs.push_back(x);
      vs.push_back(v);
    } catch (const std::exception&) {
      throw InvalidInput("profile csv: bad number on line " + std::to_string(lineno));
    }
  }
  if (xs.size() < 2) throw InvalidInput("profile csv: too few rows");
  const double h = xs[1] - xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (std::abs(xs[i] - xs[i - 1] - h) > 1e-9 * std::abs(h)) {
      throw InvalidInput("profile csv: x column is not uniformly spaced");
    }
  }
  Grid g{-xs.front(), xs.size()};
  g.validate();
  if (std::abs(g.spacing() - h) > 1e-9 * h) {
    throw InvalidInput("profile csv: x column does not describe a grid on [-L, L)");
  }
  return {g, std::move(vs)};
}

}  // namespace kdv::io
