#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "seqclass/approx.hpp"
#include "seqclass/error.hpp"
#include "seqclass/grid.hpp"
#include "seqclass/sector.hpp"
#include "seqclass/sequence.hpp"
#include "seqclass/trig_eval.hpp"

using namespace seqclass;
using cplx = std::complex<double>;

namespace {

TwoSidedSeq one_sided(const char* spec) { return {parse_rule(spec), SequenceRule::zero()}; }

TwoSidedSeq both_sides(const char* spec) { return {parse_rule(spec), parse_rule(spec)}; }

// Zeros up to the given index, then a single nonzero entry there.
TwoSidedSeq single_harmonic(std::uint64_t pos, cplx a) {
  std::vector<cplx> v(pos, cplx{0.0, 0.0});
  v.back() = a;
  return {SequenceRule::table(std::move(v)), SequenceRule::zero()};
}

Errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an Error");
}

}  // namespace

TEST_CASE("coefficient functional breakdown for square decay") {
  TwoSidedSeq f = one_sided("power:p=2");
  QBreakdown q = theorem4_Q(f, 4, 4096);
  CHECK(q.n == 4);
  CHECK(q.term1 == 0.0625);  // k (4+k)^-2 peaks at k = 4
  CHECK(q.term2_lo == doctest::Approx(1.0 / 9).epsilon(1e-14));
  CHECK(q.term2_hi == q.term2_lo);  // the finite scan dominates the tail cap

  long double brute = 0.0L;
  for (std::uint64_t k = 9; k <= 4096; ++k) brute += std::abs(f.coefficient(k));
  CHECK(q.term3_lo == doctest::Approx(double(brute)).epsilon(1e-10));
  CHECK(q.lo() == doctest::Approx(0.290879).epsilon(1e-4));
  CHECK(q.hi() - q.lo() > 1e-4);  // the certified tail keeps the bracket honest
  CHECK(q.hi() - q.lo() < 3e-4);

  // Mirrored coefficients cancel the odd part exactly; only the tail cap is left.
  QBreakdown qs = theorem4_Q(both_sides("power:p=2"), 4, 4096);
  CHECK(qs.term2_lo == 0.0);
  CHECK(qs.term2_hi > 0.0);
  CHECK(qs.term2_hi < 1e-3);

  CHECK(thrown_code([&] { theorem4_Q(f, 0, 4096); }) == Errc::domain);
  CHECK(thrown_code([&] { theorem4_Q(f, 4, 8); }) == Errc::domain);
  // Harmonic decay has no finite absolute tail, so nothing is certifiable.
  CHECK(thrown_code([&] { theorem4_Q(one_sided("power:p=1"), 4, 4096); }) == Errc::capability);
}

TEST_CASE("duality functional is exact on single harmonics") {
  cplx a{0.3, -0.7};
  TwoSidedSeq f = single_harmonic(6, a);
  for (std::uint64_t N : {1ull, 2ull, 4ull, 8ull}) {
    // Only c_6 survives, with weight 1/N.
    CHECK(en_lower_dual(f, 5, N, 1) == doctest::Approx(std::abs(a) / double(N)).epsilon(1e-14));
  }
  CHECK(en_lower_dual(f, 5, 1, -1) == 0.0);
  CHECK(en_lower_dual_symmetric(f, 5, 1) ==
        doctest::Approx(std::abs(a) / 2).epsilon(1e-14));

  // Anything supported inside [-n, n] is invisible to every dual.
  TwoSidedSeq poly{SequenceRule::table({{1.0, 2.0}, {3.0, 0.0}, {0.0, -1.0}}),
                   SequenceRule::table({{0.5, 0.5}, {0.0, 0.25}})};
  for (std::uint64_t N : default_N_list(3)) {
    CHECK(en_lower_dual(poly, 3, N, 1) == 0.0);
    CHECK(en_lower_dual(poly, 3, N, -1) == 0.0);
    CHECK(en_lower_dual_symmetric(poly, 3, N) == 0.0);
  }

  CHECK(en_lower_dual(one_sided("power:p=2"), 4, 4, 1) ==
        doctest::Approx(0.0711453865).epsilon(1e-8));

  CHECK(thrown_code([&] { en_lower_dual(poly, 3, 0, 1); }) == Errc::domain);
  CHECK(thrown_code([&] { en_lower_dual(poly, 3, 1, 2); }) == Errc::domain);
  CHECK(thrown_code([&] { en_lower_dual_symmetric(poly, 3, 0); }) == Errc::domain);
}

TEST_CASE("dual window ladder") {
  CHECK(default_N_list(0) == std::vector<std::uint64_t>{1});
  CHECK(default_N_list(4) == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(default_N_list(5) == std::vector<std::uint64_t>{1, 2, 4, 8});
}

TEST_CASE("brackets order correctly across families") {
  GridSpec g = GridSpec::full(1025);
  for (const char* spec : {"power:p=1.5", "power:p=2", "power:p=3", "geometric:r=0.5"}) {
    CAPTURE(spec);
    auto brackets = en_bracket_sweep(both_sides(spec), {4, 8, 16}, g, 1024);
    REQUIRE(brackets.size() == 3);
    for (const auto& b : brackets) {
      CAPTURE(b.n);
      CHECK(b.lower > 0.0);
      CHECK(b.lower <= b.upper + 1e-12);
      CHECK(b.Q_lo <= b.Q_hi);
      CHECK(std::isfinite(b.q_over_upper));
      CHECK(std::isfinite(b.lower_over_q));
      CHECK(b.q_over_upper > 0.01);
      CHECK(b.lower_over_q > 0.01);
    }
    for (std::size_t i = 1; i < brackets.size(); ++i)
      CHECK(brackets[i].upper < brackets[i - 1].upper);
  }

  ApproxBracket one = en_bracket(one_sided("power:p=2"), 8, default_N_list(8), g, 1024);
  CHECK(one.n == 8);
  CHECK(one.lower <= one.upper);

  // Harmonic coefficients cannot be certified continuous, so no bracket.
  CHECK(thrown_code([&] { en_bracket_sweep(one_sided("power:p=1"), {4, 8}, g, 1024); }) ==
        Errc::domain);
  CHECK_THROWS_AS(en_bracket_sweep(one_sided("power:p=2"), {8, 4}, g, 1024), Error);
  CHECK_THROWS_AS(en_bracket_sweep(one_sided("power:p=2"), {}, g, 1024), Error);
}

TEST_CASE("symmetric-sum scan respects the sector gate") {
  GridSpec g = GridSpec::full(513);
  TwoSidedSeq f = both_sides("power:p=2");
  auto brackets = en_bracket_sweep(f, {4, 8}, g, 512);
  RatioTable t = lemma4_check(f, brackets, SectorAngle(0.1), 512);
  REQUIRE(t.rows.size() == 2);
  for (const auto& r : t.rows) {
    CHECK(r.lhs > 0.0);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio > 0.1);
    CHECK(r.ratio < 4.0);
  }

  TwoSidedSeq neg{parse_rule("power:p=2").scaled({-1.0, 0.0}), SequenceRule::zero()};
  CHECK(thrown_code([&] { lemma4_check(neg, brackets, SectorAngle(0.1), 512); }) ==
        Errc::domain);
}

TEST_CASE("shifted sine blocks against their coefficient cap") {
  RatioTable t = lemma5_check(one_sided("power:p=2"), {4, 8, 16}, GridSpec::half(513));
  REQUIRE(t.rows.size() == 3);
  for (const auto& r : t.rows) {
    CAPTURE(r.n);
    CHECK(r.rhs == 0.25 / double(r.n));  // k (n+k)^-2 peaks at k = n
    CHECK(r.lhs > 0.0);
    CHECK(r.ratio > 0.5);
    CHECK(r.ratio < 2.5);
  }
  CHECK(std::isfinite(t.fit.constant));
}

TEST_CASE("certified sine tails against the weighted sup") {
  RatioTable t = lemma6_check(one_sided("power:p=2"), {4, 8, 16}, GridSpec::half(257), 4096);
  REQUIRE(t.rows.size() == 3);
  for (const auto& r : t.rows) {
    CAPTURE(r.n);
    CHECK(r.rhs == doctest::Approx(1.0 / double(r.n)).epsilon(1e-12));
    CHECK(r.lhs > 0.0);
    CHECK(r.ratio > 0.2);
    CHECK(r.ratio < 8.0);
  }
  CHECK(thrown_code([&] {
          lemma6_check(one_sided("power:p=2"), {4, 8}, GridSpec::half(257), 8);
        }) == Errc::domain);
}

TEST_CASE("cosine-coefficient consistency report") {
  // Early degrees still drift toward the asymptotic ratio 2, which reads as
  // growth; from n = 8 on the trend is flat.
  Corollary1Report rep =
      corollary1_check(parse_rule("power:p=2"), {8, 16, 32, 64}, GridSpec::full(1025), 1024);
  CHECK(rep.hypothesis_ok);
  REQUIRE(rep.side_condition.rows.size() == 4);
  for (const auto& r : rep.side_condition.rows) {
    CHECK(r.ratio > 1.0);
    CHECK(r.ratio < 3.0);
  }
  REQUIRE(rep.conclusion.rows.size() == 4);
  for (const auto& r : rep.conclusion.rows) {
    CHECK(r.ratio >= 1.0 - 1e-9);  // the sup side always dominates its lower bracket
    CHECK(r.ratio < 20.0);
  }

  CHECK(thrown_code([&] {
          corollary1_check(parse_rule("power:p=2").scaled({0.0, 1.0}), {4},
                           GridSpec::full(257), 256);
        }) == Errc::domain);
  CHECK_THROWS_AS(corollary1_check(parse_rule("power:p=2"), {}, GridSpec::full(257), 256),
                  Error);
}
