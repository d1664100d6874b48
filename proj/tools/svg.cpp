#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace kdvtool {

namespace {

constexpr double kWidth = 640, kHeight = 400, kMargin = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string line_plot(const std::string& title, const std::vector<double>& xs, const std::vector<double>& ys,
                      bool log_y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
    if (log_y && !(ys[i] > 0.0)) continue;
    pts.emplace_back(xs[i], log_y ? std::log10(ys[i]) : ys[i]);
  }
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
    << "</text>\n";
  if (!pts.empty()) {
    auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end());
    double x0 = xmin->first, x1 = xmax->first;
    double y0 = pts[0].second, y1 = pts[0].second;
    for (const auto& p : pts) {
      y0 = std::min(y0, p.second);
      y1 = std::max(y1, p.second);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) {
      const double px = kMargin + (p.first - x0) / (x1 - x0) * (kWidth - 2 * kMargin);
      const double py = kHeight - kMargin - (p.second - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
      s << num(px) << ',' << num(py) << ' ';
    }
    s << "\"/>\n";
    s << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 15 << "\" font-size=\"11\" font-family=\"sans-serif\">x: "
      << num(x0) << " .. " << num(x1) << (log_y ? ", log10 y: " : ", y: ") << num(y0) << " .. " << num(y1)
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string regime_raster(const std::vector<std::vector<int>>& codes, double a_min, double a_max, double b_min,
                          double b_max) {
  static const char* colours[] = {"#dddddd", "#d62728", "#1f77b4", "#2ca02c"};
  const std::size_t nb = codes.size();
  const std::size_t na = nb ? codes[0].size() : 0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (na && nb) {
    const double cw = (kWidth - 2 * kMargin) / static_cast<double>(na);
    const double ch = (kHeight - 2 * kMargin) / static_cast<double>(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t i = 0; i < na; ++i) {
        const int c = std::clamp(codes[j][i], 0, 3);
        s << "<rect x=\"" << num(kMargin + i * cw) << "\" y=\"" << num(kHeight - kMargin - (j + 1) * ch)
          << "\" width=\"" << num(cw + 0.5) << "\" height=\"" << num(ch + 0.5) << "\" fill=\"" << colours[c]
          << "\"/>\n";
      }
    }
  }
  s << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 15 << "\" font-size=\"11\" font-family=\"sans-serif\">a: "
    << num(a_min) << " .. " << num(a_max) << ", b: " << num(b_min) << " .. " << num(b_max)
    << " (grey infeasible, red Case1, blue Case2, green Case3)</text>\n</svg>\n";
  return s.str();
}

}  // namespace kdvtool
