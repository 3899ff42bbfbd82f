#pragma once

#include <complex>

namespace seqclass {

// Closed half-angle theta0 in [0, pi/2) of the complex sector
// { z : |arg z| <= theta0 } united with {0}. Inside the sector the real part
// dominates the modulus: |z| <= Re(z) / cos(theta0).
class SectorAngle {
 public:
  explicit SectorAngle(double theta0);

  double theta() const noexcept { return theta0_; }
  // 1/cos(theta0), the domination constant.
  double constant() const noexcept;

 private:
  double theta0_;
};

// Membership test with a small arg tolerance so boundary points survive
// rounding. z == 0 is always a member.
bool in_sector(std::complex<double> z, const SectorAngle& sector) noexcept;

}  // namespace seqclass
