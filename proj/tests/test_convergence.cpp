#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "seqclass/convergence.hpp"
#include "seqclass/error.hpp"
#include "seqclass/grid.hpp"
#include "seqclass/sequence.hpp"
#include "seqclass/summation.hpp"
#include "seqclass/trig_eval.hpp"

using namespace seqclass;
using cplx = std::complex<double>;

namespace {

TwoSidedSeq both_sides(const char* spec) {
  return {parse_rule(spec), parse_rule(spec)};
}

}  // namespace

TEST_CASE("continuity criterion across decay regimes") {
  CriterionReport fast = criterion_uniform(both_sides("power:p=2"), 4096);
  CHECK(fast.verdict == Verdict::satisfied);
  CHECK(!fast.witness);
  CHECK(!fast.samples.empty());

  CriterionReport flat = criterion_uniform({parse_rule("power:p=1"), SequenceRule::zero()},
                                           4096);
  CHECK(flat.verdict == Verdict::violated);
  REQUIRE(flat.witness.has_value());
  CHECK(*flat.witness >= 1024);  // the witness sits in the top window

  // n c_n -> 0 holds but the coefficient sum diverges: nothing certifiable,
  // nothing refutable at this horizon.
  CriterionReport slow = criterion_uniform({parse_rule("logpower:a=1,b=1"),
                                            SequenceRule::zero()}, 4096);
  CHECK(slow.verdict == Verdict::inconclusive);
}

TEST_CASE("sine coefficient criterion") {
  CHECK(criterion_sine_T3(parse_rule("power:p=2"), 4096).verdict == Verdict::satisfied);
  CHECK(criterion_sine_T3(parse_rule("geometric:r=0.5"), 4096).verdict == Verdict::satisfied);

  CriterionReport bad = criterion_sine_T3(parse_rule("power:p=1"), 4096);
  CHECK(bad.verdict == Verdict::violated);
  REQUIRE(bad.witness.has_value());

  CHECK_THROWS_AS(criterion_sine_T3(SequenceRule::table({{-1.0, 0.0}}), 64), Error);
}

TEST_CASE("integral-norm criterion certifies through the weighted sup") {
  CHECK(criterion_L1_T5(both_sides("power:p=2"), 4096).verdict == Verdict::satisfied);
  // k c_k = 1 bounded forces c_k log k -> 0; certified despite slow decay.
  CHECK(criterion_L1_T5(both_sides("power:p=1"), 4096).verdict == Verdict::satisfied);

  CriterionReport stuck = criterion_L1_T5({SequenceRule::log_power(0.0, 1.0),
                                           SequenceRule::zero()}, 4096);
  CHECK(stuck.verdict == Verdict::violated);  // c_k log k -> 1
}

TEST_CASE("test-functional point values") {
  TwoSidedSeq f{SequenceRule::power(1.0), SequenceRule::zero()};
  cplx v = phi_functional(f, 2, 1);
  CHECK(v.real() == doctest::Approx(11.0 / 24).epsilon(1e-14));
  CHECK(v.imag() == 0.0);
  CHECK(phi_functional(f, 2, -1) == cplx{0.0, 0.0});  // no negative-side mass
  CHECK(phi_lower_bound(f, 2) ==
        doctest::Approx((11.0 / 24) * 2 * kPi / kPhiBound).epsilon(1e-13));
}

TEST_CASE("test-function envelope holds on a fine grid") {
  GridSpec g = GridSpec::half(2048);
  auto sweep = phi_sup_sweep(64, g);
  REQUIRE(sweep.size() == 64);
  for (std::uint64_t n : {1, 7, 32, 64}) {
    double direct = phi_bound_check(n, g);
    CHECK(direct <= kPhiBound);
    CHECK(direct > 1.0);
    CHECK(sweep[n - 1] == doctest::Approx(direct).epsilon(1e-9));
  }
  // The sup over x grows toward the envelope as n grows but never past it.
  CHECK(sweep[63] > sweep[0]);
}

TEST_CASE("sup-norm decay table for square-decay coefficients") {
  DecayTable t = uniform_decay_experiment(both_sides("power:p=2"), {4, 8, 16, 32},
                                          GridSpec::full(1025));
  REQUIRE(t.rows.size() == 4);
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    CHECK(t.rows[i].value < t.rows[i - 1].value);
  // Remainder sup at x = 0 equals the full coefficient tail: about 2/n.
  CHECK(t.rows[0].value == doctest::Approx(2 * 0.221322).epsilon(1e-3));
  REQUIRE(t.slope.has_value());
  CHECK(*t.slope == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("integral-norm experiment keeps its certified ordering") {
  L1Table t = l1_decay_experiment(both_sides("power:p=2"), {4, 8, 16, 32},
                                  GridSpec::full(2049));
  REQUIRE(t.rows.size() == 4);
  CHECK(t.lower_ok);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const L1Row& r = t.rows[i];
    CHECK(r.phi_lower <= r.l1 + r.l1_bound + 1e-9);
    CHECK(r.tau_gap_l1 > 0.0);
    CHECK(r.log_surrogate > 0.0);
    if (i) CHECK(r.l1 < t.rows[i - 1].l1);
  }
  CHECK(t.tau_fit.constant < 2 * kPi);  // delayed-mean gap stays a few multiples
  CHECK(!t.tau_fit.grows());
}

TEST_CASE("variation against weighted sup over doubling blocks") {
  RatioTable t = lemma8_check(SequenceRule::power(1.0), {4, 8, 16, 32, 64});
  for (const auto& r : t.rows) {
    CHECK(r.ratio <= 1.1);
    CHECK(r.ratio > 0.2);
  }
  RatioRow n16 = t.rows[2];
  CHECK(n16.n == 16);
  CHECK(n16.rhs == doctest::Approx(std::log(16.0) / 16).epsilon(1e-12));
  CHECK(!t.fit.grows());
}

TEST_CASE("rate specifications demand a usable comparison scale") {
  RateSpec ok = make_rate_spec(parse_rule("power:p=1"), 64);
  CHECK(ok.doubling_constant == doctest::Approx(2.0).epsilon(1e-12));
  RateSpec log_ok = make_rate_spec(parse_rule("logpower:a=0,b=1"), 64);
  CHECK(log_ok.doubling_constant < 2.0);

  std::vector<cplx> rising{{0.5, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(make_rate_spec(SequenceRule::table(rising), 1), Error);
  CHECK_THROWS_AS(make_rate_spec(SequenceRule::zero(), 4), Error);
  CHECK_THROWS_AS(make_rate_spec(SequenceRule::power(1.0).scaled({0.0, 1.0}), 4), Error);
}

TEST_CASE("rate matching on a known pair") {
  TwoSidedSeq f = both_sides("power:p=2");
  RateSpec psi = make_rate_spec(parse_rule("power:p=1"), 32);
  RateReport r = rate_match_T6(f, psi, {4, 8, 16, 32}, GridSpec::full(2049));
  REQUIRE(r.rows.size() == 4);
  CHECK(r.consistent);
  for (const auto& row : r.rows) {
    CHECK(row.en_lo <= row.en_hi + 1e-12);
    CHECK(row.en_lo > 0.0);
    CHECK(row.c2 <= row.c1 + 1e-12);  // certified lower never beats the upper
  }
  CHECK(r.C1 < 5.0);
  CHECK(std::isfinite(r.C2));
  CHECK(std::isfinite(r.C3));
}

TEST_CASE("verdict names are stable") {
  CHECK(std::string(verdict_name(Verdict::satisfied)) == "satisfied");
  CHECK(std::string(verdict_name(Verdict::violated)) == "violated");
  CHECK(std::string(verdict_name(Verdict::inconclusive)) == "inconclusive");
}
