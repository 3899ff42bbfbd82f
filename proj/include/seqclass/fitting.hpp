#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seqclass {

// Quotient with the degenerate-denominator conventions used by every ratio
// functional here: 0/0 = 0, positive/0 = +infinity.
double ext_ratio(double num, double den) noexcept;

// One shared trend knob. One-sided checks (O(.) claims) flag growth when the
// slope reaches +kSlopeCap; two-sided checks (asymptotic-equivalence windows)
// require |slope| < kSlopeCap.
inline constexpr double kSlopeCap = 0.1;

// Least-squares slope of log(y) against log(x) over the samples with finite
// positive x and y. Returns nullopt with fewer than two usable samples.
std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& samples);

// Restricts (index, value) samples to the top two dyadic decades of
// [1, horizon], i.e. indices in (horizon/4, horizon], before fitting.
// Needs at least eight usable samples there.
std::optional<double> top_decades_slope(const std::vector<std::pair<double, double>>& samples,
                                        double horizon);

struct TrendFit {
  double constant = 0.0;              // sup of the ratio samples
  std::optional<double> slope;        // log-log trend, when fittable
  bool grows() const { return slope && *slope >= kSlopeCap; }
  bool flat() const { return !slope || std::abs(*slope) < kSlopeCap; }
};

// constant = max y, slope as in loglog_slope.
TrendFit fit_trend(const std::vector<std::pair<double, double>>& samples);

// One inequality check "lhs <= C * rhs" sampled over an index range.
struct RatioRow {
  std::uint64_t n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RatioTable {
  std::string what;
  std::vector<RatioRow> rows;
  TrendFit fit;  // over (n, ratio)
};

RatioTable make_ratio_table(std::string what, std::vector<RatioRow> rows);

}  // namespace seqclass
