#pragma once

/**
 * @file svg.hpp
 * @brief Deterministic SVG line chart of Div(n)/n.
 *
 * Fixed 640x400 canvas, coordinates printed with two decimals. Rows without
 * a finite value break the polyline; unbounded rows get a cross glyph
 * (class "gap") at the top edge, horizon-limited rows a hollow square
 * (class "horizon").
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "coxdiv/divergence.hpp"
#include "coxdiv/error.hpp"

namespace coxdiv {

namespace detail {
inline std::string fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}
}  // namespace detail

inline std::string divergence_svg(const DivergenceReport& report) {
  if (report.rows.empty()) throw Error(ErrorCode::config, "cannot plot an empty divergence report");
  using detail::fixed2;
  constexpr double width = 640, height = 400, left = 60, right = 20, top = 30, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  const int n_max = report.rows.back().n;
  double y_max = 1;
  for (const auto& r : report.rows)
    if (r.value && !r.unbounded) y_max = std::max(y_max, static_cast<double>(*r.value) / r.n);
  y_max = std::ceil(y_max);
  auto x_of = [&](int n) { return left + (n_max == 1 ? plot_w / 2 : plot_w * (n - 1) / (n_max - 1)); };
  auto y_of = [&](double v) { return top + plot_h * (1 - v / y_max); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  s += "<title>Div(n)/n for " + report.oracle + "</title>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
  // axes
  s += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top + plot_h) + "\" x2=\"" + fixed2(left + plot_w) +
       "\" y2=\"" + fixed2(top + plot_h) + "\"/>\n";
  s += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top) + "\" x2=\"" + fixed2(left) + "\" y2=\"" +
       fixed2(top + plot_h) + "\"/>\n";
  s += "</g>\n<g class=\"ticks\" font-family=\"monospace\" font-size=\"11\">\n";
  for (const auto& r : report.rows)
    s += "<text x=\"" + fixed2(x_of(r.n)) + "\" y=\"" + fixed2(top + plot_h + 16) + "\" text-anchor=\"middle\">" +
         std::to_string(r.n) + "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    double v = y_max * k / 4;
    s += "<text x=\"" + fixed2(left - 6) + "\" y=\"" + fixed2(y_of(v) + 4) + "\" text-anchor=\"end\">" + fixed2(v) +
         "</text>\n";
  }
  s += "<text x=\"" + fixed2(left + plot_w / 2) + "\" y=\"" + fixed2(height - 12) +
       "\" text-anchor=\"middle\">n</text>\n";
  s += "<text x=\"14\" y=\"" + fixed2(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
       fixed2(top + plot_h / 2) + ")\">Div(n)/n</text>\n</g>\n";

  // series, broken at rows without a finite value
  std::vector<std::vector<std::pair<double, double>>> runs(1);
  std::string marks;
  for (const auto& r : report.rows) {
    const double x = x_of(r.n);
    if (r.unbounded) {
      runs.emplace_back();
      marks += "<path class=\"gap\" d=\"M" + fixed2(x - 5) + " " + fixed2(top - 5) + " L" + fixed2(x + 5) + " " +
               fixed2(top + 5) + " M" + fixed2(x - 5) + " " + fixed2(top + 5) + " L" + fixed2(x + 5) + " " +
               fixed2(top - 5) + "\" stroke=\"red\" stroke-width=\"2\"/>\n";
      continue;
    }
    if (r.status == RowStatus::horizon_exceeded) {
      runs.emplace_back();
      marks += "<rect class=\"horizon\" x=\"" + fixed2(x - 4) + "\" y=\"" + fixed2(top - 4) +
               "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"orange\"/>\n";
      continue;
    }
    if (!r.value) {
      runs.emplace_back();
      continue;
    }
    const double y = y_of(static_cast<double>(*r.value) / r.n);
    runs.back().emplace_back(x, y);
    marks += "<circle class=\"point\" cx=\"" + fixed2(x) + "\" cy=\"" + fixed2(y) + "\" r=\"3\"/>\n";
  }
  s += "<g class=\"series\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\">\n";
  for (const auto& run : runs) {
    if (run.size() < 2) continue;
    s += "<polyline points=\"";
    for (std::size_t i = 0; i < run.size(); ++i) s += (i ? " " : "") + fixed2(run[i].first) + "," + fixed2(run[i].second);
    s += "\"/>\n";
  }
  s += "</g>\n<g class=\"marks\" fill=\"steelblue\">\n" + marks + "</g>\n</svg>\n";
  return s;
}

}  // namespace coxdiv
