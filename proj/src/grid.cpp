#include "seqclass/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "seqclass/error.hpp"
#include "seqclass/parallel.hpp"

namespace seqclass {

GridSpec GridSpec::half(std::size_t points) { return {Domain::zero_pi, points, {}}; }
GridSpec GridSpec::full(std::size_t points) { return {Domain::minus_pi_pi, points, {}}; }

double GridSpec::lo() const noexcept { return domain == Domain::zero_pi ? 0.0 : -kPi; }
double GridSpec::hi() const noexcept { return kPi; }

std::vector<double> GridSpec::realize() const {
  if (base_points < 2) throw Error(Errc::bad_config, "grid needs at least 2 base points");
  double a = lo(), b = hi();
  std::vector<double> xs;
  xs.reserve(base_points + extra_points.size());
  for (std::size_t i = 0; i < base_points; ++i)
    xs.push_back(a + (b - a) * (double(i) / double(base_points - 1)));
  for (double x : extra_points) {
    if (!(x >= a && x <= b))
      throw Error(Errc::bad_config, "grid extra point outside the domain");
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

GridSpec with_critical_points(GridSpec g, const std::vector<std::uint64_t>& ns) {
  double a = g.lo(), b = g.hi();
  for (std::uint64_t n : ns) {
    if (n == 0) continue;
    double pts[4] = {kPi / (8.0 * double(n)), kPi / (2.0 * double(n)), kPi / double(n),
                     1.0 / double(n)};
    for (double x : pts)
      if (x >= a && x <= b) g.extra_points.push_back(x);
  }
  return g;
}

std::size_t thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t budget = hw ? hw : 1;
  if (const char* env = std::getenv("SEQCLASS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) budget = std::size_t(std::min(v, 256L));
  }
  return budget;
}

}  // namespace seqclass
