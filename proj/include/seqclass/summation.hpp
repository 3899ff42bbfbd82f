#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace seqclass {

// Neumaier-compensated accumulator. The running error term is kept separate
// so a sequence of prefix states can later be differenced without losing the
// compensation (see prefix_gap).
struct Compensated {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) noexcept {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const noexcept { return sum + comp; }
};

struct ComplexSum {
  Compensated re, im;
  void add(std::complex<double> z) noexcept {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const noexcept { return {re.value(), im.value()}; }
};

// a - b as an exact head/tail pair (classic TwoDiff).
inline void two_diff(double a, double b, double& head, double& tail) noexcept {
  head = a - b;
  double bb = head - a;
  tail = (a - (head - bb)) - (b + bb);
}

// Sum over a gap between two prefix accumulator states. The heads are
// differenced exactly and the compensation terms are carried along, so the
// result resolves gaps many orders of magnitude below the prefix totals.
inline double prefix_gap(const Compensated& lo, const Compensated& hi) noexcept {
  double d, e;
  two_diff(hi.sum, lo.sum, d, e);
  return d + (e + (hi.comp - lo.comp));
}

}  // namespace seqclass
