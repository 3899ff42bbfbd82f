#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace seqclass {

namespace detail {
class RuleImpl;
}

// A one-sided coefficient sequence c_1, c_2, ... given by a closed-form rule
// or a finite table, optionally with a zero-index term. Rules are immutable
// value types (cheap to copy, safe to share across threads).
//
// Every rule carries three certified tail bounds, each valid for all
// real m >= 1 and at m = +infinity, where the value is the analytic
// limit/limsup of the bounded quantity:
//
//   tail_variation(m)    >= sum_{k>=m} |c_k - c_{k+1}|
//   tail_weighted_sup(m) >= sup_{k>=m} k*|c_k|
//   tail_abs_sum(m)      >= sum_{k>=m} |c_k|
//
// Bounds return +infinity when nothing can be certified. They are never
// below the true quantity; soundness is what checkers rely on.
class SequenceRule {
 public:
  // c_k = values[k-1] for k <= len, 0 afterwards. Optional explicit c_0.
  static SequenceRule table(std::vector<std::complex<double>> values,
                            std::optional<std::complex<double>> c0 = std::nullopt);
  // The empty table: identically zero.
  static SequenceRule zero();
  // c_k = k^(-p), p > 0.
  static SequenceRule power(double p);
  // c_k = k^(-a) * log(k+1)^(-b), a >= 0, b real.
  static SequenceRule log_power(double a, double b);
  // c_k = r^k, 0 < r < 1.
  static SequenceRule geometric(double r);
  // The dyadic-block sequence: c_1 = 1 and, for 2^j <= k < 2^(j+1) with
  // j >= 1, c_k = 2^(-2j) when j is even and 2^(-3j) when j is odd.
  // Constant on dyadic blocks with alternating decay rates; its blockwise
  // variation is controlled two-sidedly but not one-sidedly.
  static SequenceRule dyadic_block();

  // Combinators. scaled multiplies every term (including c_0 if defined);
  // plus adds termwise; with_zero_term overrides/declares c_0 only.
  SequenceRule scaled(std::complex<double> factor) const;
  SequenceRule plus(const SequenceRule& other) const;
  SequenceRule with_zero_term(std::complex<double> c0) const;

  // c_n for n >= 1. n == 0 returns the zero term if the rule defines one and
  // throws Error(Errc::domain) otherwise.
  std::complex<double> eval(std::uint64_t n) const;
  std::optional<std::complex<double>> zero_term() const;
  // Forward difference c_n - c_{n+1}, n >= 1.
  std::complex<double> delta(std::uint64_t n) const;

  bool is_real() const;
  // Round-trippable description used in configs and reports.
  std::string describe() const;

  double tail_variation(double m) const;
  double tail_weighted_sup(double m) const;
  double tail_abs_sum(double m) const;

 private:
  explicit SequenceRule(std::shared_ptr<const detail::RuleImpl> impl);
  std::shared_ptr<const detail::RuleImpl> impl_;
};

// sum_{k=m}^{M} |c_k - c_{k+1}|, compensated. Requires 1 <= m <= M.
double block_variation(const SequenceRule& seq, std::uint64_t m, std::uint64_t M);

// Parses a rule specification:
//   zero | dyadicblock | power:p=<v> | logpower:a=<v>,b=<v>
//   | geometric:r=<v> | table:@<csv-path>
// The CSV holds one coefficient per line as "re,im", row k giving c_k from
// k = 1. Malformed input throws Error(Errc::bad_rule_spec).
SequenceRule parse_rule(const std::string& spec);

// A two-sided coefficient sequence {c_k}_{k=-inf}^{inf} given by paired
// one-sided rules. Index 0 belongs to the positive-side rule; a rule without
// a defined zero term contributes 0 there.
struct TwoSidedSeq {
  SequenceRule pos;
  SequenceRule neg;

  std::complex<double> coefficient(std::int64_t k) const;
  // c_n + c_{-n} for n >= 1.
  std::complex<double> symmetric_sum(std::uint64_t n) const;
  // The symmetric sums as a one-sided rule (with combined tail bounds).
  SequenceRule symmetric_rule() const { return pos.plus(neg); }
  bool is_real() const { return pos.is_real() && neg.is_real(); }
  std::string describe() const;
};

}  // namespace seqclass
