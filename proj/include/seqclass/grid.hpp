#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace seqclass {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Domain { zero_pi, minus_pi_pi };

// Evaluation abscissae: a uniform base grid over the domain plus caller
// injected critical points (kernel branch cuts, x = pi/(8n) style hot spots).
// realize() returns the sorted, duplicate-free union.
struct GridSpec {
  Domain domain = Domain::zero_pi;
  std::size_t base_points = 4096;
  std::vector<double> extra_points;

  static GridSpec half(std::size_t points = 4096);       // [0, pi]
  static GridSpec full(std::size_t points = 8193);       // [-pi, pi]

  double lo() const noexcept;
  double hi() const noexcept;
  std::vector<double> realize() const;  // throws Errc::bad_config on bad spec
};

// Copy of g with {pi/(8n), pi/(2n), pi/n, 1/n} injected for each n, clipped
// to the domain.
GridSpec with_critical_points(GridSpec g, const std::vector<std::uint64_t>& ns);

}  // namespace seqclass
