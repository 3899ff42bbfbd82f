#include "seqclass/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seqclass {

double ext_ratio(double num, double den) noexcept {
  if (den > 0.0) return num / den;
  return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& samples) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (auto [x, y] : samples) {
    if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y)) continue;
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nullopt;
  double den = n * sxx - sx * sx;
  if (den <= 0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

std::optional<double> top_decades_slope(const std::vector<std::pair<double, double>>& samples,
                                        double horizon) {
  std::vector<std::pair<double, double>> top;
  std::size_t usable = 0;
  for (auto& s : samples)
    if (s.first > horizon / 4 && s.first <= horizon) {
      top.push_back(s);
      if (s.second > 0 && std::isfinite(s.second)) ++usable;
    }
  if (usable < 8) return std::nullopt;
  return loglog_slope(top);
}

TrendFit fit_trend(const std::vector<std::pair<double, double>>& samples) {
  TrendFit fit;
  for (auto& [x, y] : samples) {
    (void)x;
    fit.constant = std::max(fit.constant, y);
  }
  fit.slope = loglog_slope(samples);
  return fit;
}

RatioTable make_ratio_table(std::string what, std::vector<RatioRow> rows) {
  RatioTable t;
  t.what = std::move(what);
  t.rows = std::move(rows);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(t.rows.size());
  for (const auto& r : t.rows) samples.emplace_back(double(r.n), r.ratio);
  t.fit = fit_trend(samples);
  return t;
}

}  // namespace seqclass
