#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "spiral/harness.hpp"

namespace spiral {

namespace {

constexpr double kClampFloor = 1e-16;

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.3f", v);
  return std::string(buf.data());
}

std::string decade_label(int exponent) {
  if (exponent == 0) return "1";
  return "1e" + std::to_string(exponent);
}

}  // namespace

std::string emit_svg(const std::vector<Trace>& traces, const PlotAxes& axes) {
  if (traces.empty()) throw std::invalid_argument("emit_svg: no traces");

  const double width = 760.0, height = 480.0;
  const double left = 70.0, right = width - 180.0, top = 30.0, bottom = height - 50.0;

  double x_max = 0.0;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = 0.0;
  bool clamped_any = false;
  std::vector<bool> clamped(traces.size(), false);
  std::vector<bool> dropped(traces.size(), false);

  const auto x_of = [&](const TraceRecord& r) {
    return axes.x == PlotAxes::X::Epochs ? r.epoch : r.wall_time;
  };

  for (std::size_t t = 0; t < traces.size(); ++t) {
    for (const TraceRecord& r : traces[t].records) {
      double y = r.suboptimality;
      if (!std::isfinite(y)) {
        dropped[t] = true;  // diverged runs report inf; skip those vertices
        continue;
      }
      x_max = std::max(x_max, x_of(r));
      if (y < kClampFloor) {
        clamped[t] = true;
        clamped_any = true;
        y = kClampFloor;
      }
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!(y_max > 0.0)) {
    throw std::invalid_argument("emit_svg: traces carry no plottable records");
  }
  if (x_max <= 0.0) x_max = 1.0;

  const int exp_lo = static_cast<int>(std::floor(std::log10(y_min)));
  int exp_hi = static_cast<int>(std::ceil(std::log10(y_max)));
  if (exp_hi <= exp_lo) exp_hi = exp_lo + 1;

  const auto px = [&](double x) { return left + (right - left) * x / x_max; };
  const auto py = [&](double y) {
    const double ly = std::log10(std::max(y, kClampFloor));
    return bottom - (bottom - top) * (ly - exp_lo) / (exp_hi - exp_lo);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes frame.
  svg << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\""
      << fmt(right - left) << "\" height=\"" << fmt(bottom - top)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Decade grid and labels.
  for (int e = exp_lo; e <= exp_hi; ++e) {
    const double y = py(std::pow(10.0, e));
    svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(right) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << fmt(left - 8.0) << "\" y=\"" << fmt(y + 4.0)
        << "\" font-size=\"12\" text-anchor=\"end\">" << decade_label(e)
        << "</text>\n";
  }

  // A few x ticks.
  const int x_ticks = 5;
  for (int k = 0; k <= x_ticks; ++k) {
    const double xv = x_max * k / x_ticks;
    const double x = px(xv);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(bottom) << "\" x2=\""
        << fmt(x) << "\" y2=\"" << fmt(bottom + 5.0) << "\" stroke=\"black\"/>\n";
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%g", xv);
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(bottom + 20.0)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << buf.data()
        << "</text>\n";
  }
  svg << "<text x=\"" << fmt((left + right) / 2.0) << "\" y=\""
      << fmt(height - 12.0) << "\" font-size=\"13\" text-anchor=\"middle\">"
      << (axes.x == PlotAxes::X::Epochs ? "epochs" : "seconds") << "</text>\n";
  svg << "<text x=\"18\" y=\"" << fmt((top + bottom) / 2.0)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fmt((top + bottom) / 2.0) << ")\">suboptimality</text>\n";

  // Polylines.
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const char* color = kPalette[t % kPalette.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const TraceRecord& r : traces[t].records) {
      if (!std::isfinite(r.suboptimality)) continue;
      const double y = std::min(std::max(r.suboptimality, kClampFloor),
                                std::pow(10.0, exp_hi));
      svg << fmt(px(x_of(r))) << ',' << fmt(py(y)) << ' ';
    }
    svg << "\"/>\n";
  }

  // Legend.
  const double legend_x = right + 12.0;
  double legend_y = top + 10.0;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const char* color = kPalette[t % kPalette.size()];
    svg << "<line x1=\"" << fmt(legend_x) << "\" y1=\"" << fmt(legend_y)
        << "\" x2=\"" << fmt(legend_x + 24.0) << "\" y2=\"" << fmt(legend_y)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fmt(legend_x + 30.0) << "\" y=\"" << fmt(legend_y + 4.0)
        << "\" font-size=\"12\">" << traces[t].solver
        << (clamped[t] ? " (clamped)" : "")
        << (dropped[t] ? " (non-finite dropped)" : "") << "</text>\n";
    legend_y += 18.0;
  }
  if (clamped_any) {
    svg << "<text x=\"" << fmt(legend_x) << "\" y=\"" << fmt(legend_y + 4.0)
        << "\" font-size=\"10\">values below 1e-16 clamped</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace spiral
