#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "seqclass/error.hpp"
#include "seqclass/grid.hpp"
#include "seqclass/sequence.hpp"
#include "seqclass/summation.hpp"
#include "seqclass/trig_eval.hpp"

using namespace seqclass;
using cplx = std::complex<double>;

namespace {

double brute_sin_sum(std::uint64_t n, double x) {
  Compensated s;
  for (std::uint64_t k = 1; k <= n; ++k) s.add(std::sin(double(k) * x));
  return s.value();
}

cplx brute_partial(const TwoSidedSeq& f, std::uint64_t n, double x) {
  ComplexSum s;
  s.add(f.coefficient(0));
  for (std::uint64_t k = 1; k <= n; ++k) {
    s.add(f.coefficient(std::int64_t(k)) * std::polar(1.0, double(k) * x));
    s.add(f.coefficient(-std::int64_t(k)) * std::polar(1.0, -double(k) * x));
  }
  return s.value();
}

}  // namespace

TEST_CASE("split-argument trig stays on the unit circle") {
  for (double k : {1.0, 17.0, 511.0, 4096.0})
    for (double x : {1e-7, 0.015625, 0.7, 3.1, -2.5}) {
      CHECK(std::abs(sin_prod(k, x) * sin_prod(k, x) + cos_prod(k, x) * cos_prod(k, x) - 1.0) <
            1e-14);
      cplx u = unit_phase(k, x);
      CHECK(u.real() == cos_prod(k, x));
      CHECK(u.imag() == sin_prod(k, x));
      // Cross-check against extended precision on the raw product.
      long double ref = sinl((long double)k * (long double)x);
      CHECK(std::abs(sin_prod(k, x) - double(ref)) < 1e-13);
    }
}

TEST_CASE("partial sums of a one-sided square-decay series") {
  TwoSidedSeq f{SequenceRule::power(2.0), SequenceRule::zero()};
  CHECK(partial_sum(f, 2, kPi).real() == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(std::abs(partial_sum(f, 2, kPi).imag()) < 1e-15);
  CHECK(partial_sum(f, 0, 1.0) == cplx{0.0, 0.0});

  for (double x : {0.0, 0.3, 2.0, -1.1})
    CHECK(std::abs(partial_sum(f, 50, x) - brute_partial(f, 50, x)) < 1e-13);
}

TEST_CASE("sine partial sums match the exponential mapping") {
  SequenceRule b = SequenceRule::power(1.0);
  TwoSidedSeq f = sine_series(b);
  for (double x : {0.1, 1.0, 2.9})
    for (std::uint64_t n : {1, 5, 32}) {
      double direct = sine_partial(b, n, x);
      cplx via = partial_sum(f, n, x);
      CHECK(std::abs(via.real() - direct) < 1e-13);
      CHECK(std::abs(via.imag()) < 1e-14);
    }
  Compensated ref;
  for (int k = 1; k <= 7; ++k) ref.add(std::sin(k * 0.8) / k);
  CHECK(sine_partial(b, 7, 0.8) == doctest::Approx(ref.value()).epsilon(1e-14));
}

TEST_CASE("cosine mapping keeps the zero term") {
  SequenceRule c = SequenceRule::power(2.0).with_zero_term({3.0, 0.0});
  TwoSidedSeq f = cosine_series(c);
  for (double x : {0.0, 0.4, 3.0}) {
    Compensated ref;
    ref.add(3.0);
    for (int k = 1; k <= 20; ++k) ref.add(std::cos(k * x) / double(k * k));
    CHECK(std::abs(partial_sum(f, 20, x).real() - ref.value()) < 1e-13);
    CHECK(std::abs(partial_sum(f, 20, x).imag()) < 1e-14);
  }
}

TEST_CASE("closed-form sine sums against brute force") {
  for (std::uint64_t n : {1, 2, 7, 64, 1000})
    for (double x : {1e-9, 1e-4, 0.01, 0.5, 1.5, 3.0, kPi}) {
      CHECK(std::abs(sin_sum(n, x) - brute_sin_sum(n, x)) < 1e-10);
    }
  CHECK(sin_sum(5, 0.0) == 0.0);
  CHECK(sin_sum(0, 1.0) == 0.0);
  // The certified envelope survives the clamp.
  for (std::uint64_t n : {10, 1000, 100000})
    for (double x : {1e-6, 1e-3, 0.2}) CHECK(std::abs(sin_sum(n, x)) <= kPi / x + 1e-9);
  CHECK_THROWS_AS(sin_sum(3, -0.5), Error);
  CHECK_THROWS_AS(sin_sum(3, 4.0), Error);
}

TEST_CASE("kernel point values") {
  CHECK(dirichlet(3, kPi / 2) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(dirichlet(7, 1e-9) == 7.5);
  CHECK(dirichlet(0, 0.3) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dirichlet_star(1, kPi, 1) == doctest::Approx(0.0).epsilon(1e-14));

  // Brute-force conjugate sums under the branch rule.
  auto star_brute = [](std::uint64_t k, double x) {
    Compensated s;
    for (std::uint64_t j = 1; j <= k; ++j) s.add(std::sin(j * x));
    return s.value();
  };
  for (std::uint64_t k : {1, 4, 20})
    for (double x : {0.001, 0.01, 0.04}) {  // inside |x| < 1/20 <= 1/k
      CHECK(dirichlet_star(k, x, 20) == doctest::Approx(star_brute(k, x)).epsilon(1e-11));
    }
  for (std::uint64_t k : {1, 4, 20})
    for (double x : {0.5, 2.0}) {  // outside: the sum minus half a cotangent
      double want = star_brute(k, x) - 0.5 / std::tan(x / 2);
      CHECK(dirichlet_star(k, x, 20) == doctest::Approx(want).epsilon(1e-11));
    }
  CHECK_THROWS_AS(dirichlet_star(3, 0.5, 0), Error);
}

TEST_CASE("kernel difference and reflection identities") {
  auto xs = GridSpec::half(257).realize();
  for (std::uint64_t k : {2, 3, 9, 32}) {
    double lo = 1.0 / double(k), hi = 1.0 / double(k - 1);
    for (double x : xs) {
      if (x >= lo && x < hi) continue;  // kernels on different branches there
      cplx d15 = complex_kernel(k, x, k) - complex_kernel(k - 1, x, k - 1) -
                 unit_phase(double(k), x);
      CHECK(std::abs(d15) < 1e-13);
      cplx d16 = complex_kernel(k, x, k) + complex_kernel(k, -x, k) - 2.0 * dirichlet(k, x);
      CHECK(std::abs(d16) < 1e-13);
    }
  }
}

TEST_CASE("delayed means and their polynomial gap") {
  TwoSidedSeq f{SequenceRule::power(2.0), SequenceRule::zero()};
  CHECK(delayed_mean(f, 2, 0.0).real() == doctest::Approx(47.0 / 36).epsilon(1e-14));
  CHECK((delayed_mean(f, 2, 0.0) - partial_sum(f, 2, 0.0)).real() ==
        doctest::Approx(1.0 / 18).epsilon(1e-13));

  // tau_{2n,n} = (1/n) sum_{k=n}^{2n-1} S_k, brute force.
  for (double x : {0.2, 1.7}) {
    ComplexSum acc;
    for (std::uint64_t k = 4; k <= 7; ++k) acc.add(partial_sum(f, k, x));
    CHECK(std::abs(delayed_mean(f, 4, x) - acc.value() / 4.0) < 1e-13);
  }

  auto xs = GridSpec::half(33).realize();
  auto gap = delayed_mean_minus_sn_on_grid(f, 6, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(std::abs(gap[i] - (delayed_mean(f, 6, xs[i]) - partial_sum(f, 6, xs[i]))) < 1e-13);
}

TEST_CASE("abel summed tails agree with long brute sums") {
  SequenceRule b = SequenceRule::power(2.0);
  for (double x : {0.3, 0.7, 2.0})
    for (std::uint64_t N : {2, 10, 33}) {
      AbelTail at = abel_tail(b, N, x, 4096);
      Compensated brute;
      for (std::uint64_t k = N; k <= 3000000; ++k)
        brute.add(std::sin(double(k) * x) / (double(k) * double(k)));
      CHECK(std::abs(at.value.imag()) < 1e-14);
      CHECK(std::abs(at.value.real() - brute.value()) <= at.remainder_bound + 1e-8);
      CHECK(at.remainder_bound < 0.05);
    }

  // 1/k converges too slowly for brute force; check against the analytic
  // tail (pi - x)/2 - S_{N-1} instead.
  SequenceRule h = SequenceRule::power(1.0);
  for (double x : {0.5, 1.5}) {
    AbelTail at = abel_tail(h, 5, x, 200000);
    Compensated head;
    for (int k = 1; k <= 4; ++k) head.add(std::sin(k * x) / k);
    double want = (kPi - x) / 2 - head.value();
    CHECK(std::abs(at.value.real() - want) <= at.remainder_bound + 1e-9);
  }

  CHECK_THROWS_AS(abel_tail(b, 3, 0.0, 1024), Error);
  CHECK_THROWS_AS(abel_tail(b, 3, kPi, 1024), Error);
  // No certified variation tail: the growing rule must refuse.
  CHECK_THROWS_AS(abel_tail(SequenceRule::log_power(0.0, -1.0), 3, 1.0, 1024), Error);
}

TEST_CASE("quadrature of known curves") {
  auto xs = GridSpec::full(8193).realize();
  std::vector<cplx> vals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = {std::cos(xs[i]), 0.0};
  NormPair np = norms(xs, vals);
  CHECK(np.sup == 1.0);
  CHECK(np.l1 == doctest::Approx(4.0).epsilon(2.5e-7));

  auto half = GridSpec::half(4097).realize();
  std::vector<cplx> sv(half.size());
  for (std::size_t i = 0; i < half.size(); ++i) sv[i] = {std::sin(half[i]), 0.0};
  CHECK(norms(half, sv, true).l1 == doctest::Approx(4.0).epsilon(1e-6));

  CHECK_THROWS_AS(norms({0.2, 0.1}, {cplx{}, cplx{}}), Error);
}

TEST_CASE("grid partial sums agree with point evaluation at every cut") {
  TwoSidedSeq f{SequenceRule::power(2.0), SequenceRule::geometric(0.5)};
  auto xs = with_critical_points(GridSpec::full(129), {4, 16}).realize();
  std::vector<std::uint64_t> cuts{1, 4, 16, 64};
  auto sums = partial_sums_on_grid(f, cuts, xs);
  REQUIRE(sums.size() == cuts.size());
  for (std::size_t j = 0; j < cuts.size(); ++j)
    for (std::size_t i = 0; i < xs.size(); ++i)
      CHECK(std::abs(sums[j][i] - brute_partial(f, cuts[j], xs[i])) < 1e-13);
  CHECK_THROWS_AS(partial_sums_on_grid(f, {4, 4}, xs), Error);
  CHECK_THROWS_AS(partial_sums_on_grid(f, {}, xs), Error);
}

TEST_CASE("series remainders carry truncation bounds") {
  TwoSidedSeq f{SequenceRule::power(2.0), SequenceRule::zero()};
  SeriesEval e = eval_tail(f, 4, GridSpec::full(513));
  double tail_at_zero = kPi * kPi / 6 - (1.0 + 0.25 + 1.0 / 9 + 1.0 / 16);
  CHECK(e.sup_norm <= tail_at_zero + 1e-9);
  CHECK(e.sup_norm + e.truncation_sup >= tail_at_zero - 1e-9);
  CHECK(e.truncation_sup > 0.0);
  CHECK(e.truncation_l1 == doctest::Approx(e.truncation_sup * 2 * kPi).epsilon(1e-12));
  CHECK(e.xs.size() == e.values.size());
}
