#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqclass/fitting.hpp"
#include "seqclass/grid.hpp"
#include "seqclass/sequence.hpp"

namespace seqclass {

// 6*sqrt(pi), the proven sup-norm envelope of the phi test functions. Both
// phi evaluators throw std::logic_error if a grid value ever exceeds it:
// that would mean the reconstructed formula is wrong, not the data.
inline constexpr double kPhiBound = 10.63472310543309629;

// A limit counts as certified only when a closed-form majorant pins it; grid
// or sample evidence alone never upgrades a verdict to "satisfied".
inline constexpr double kCertifiedEps = 1e-10;

enum class Verdict { satisfied, violated, inconclusive };
const char* verdict_name(Verdict v) noexcept;

struct DecaySample {
  std::uint64_t n = 0;
  double value = 0.0;
};

// Outcome of one limit-condition test. satisfied = majorant-certified;
// violated = concrete non-decaying witness among the samples; anything else
// stays inconclusive.
struct CriterionReport {
  std::string criterion;
  std::string sequence;
  std::uint64_t horizon = 0;
  std::vector<DecaySample> samples;
  Verdict verdict = Verdict::inconclusive;
  std::optional<std::uint64_t> witness;
  std::string detail;
};

// Continuity criterion: n(|c_n| + |c_{-n}|) -> 0 and sum |c_n + c_{-n}|
// finite. The report's samples carry the first quantity; the summability
// side is tested on dyadic block sums and summarized in detail.
CriterionReport criterion_uniform(const TwoSidedSeq& seq, std::uint64_t horizon);

// Sine-series uniform convergence reduces to n b_n -> 0 (for nonnegative b in
// the blockwise-bounded class; the class verdict is the caller's input).
CriterionReport criterion_sine_T3(const SequenceRule& b, std::uint64_t horizon);

// L1 convergence criterion: |fhat(+-n)| log n -> 0. Certification needs only
// a finite weighted-sup majorant, since sup k|c_k| < inf forces the log decay.
CriterionReport criterion_L1_T5(const TwoSidedSeq& fhat, std::uint64_t horizon);

struct DecayRow {
  std::uint64_t n = 0;
  double value = 0.0;
  double bound = 0.0;  // truncation part; the measured value is exact up to it
};

struct DecayTable {
  std::string quantity;
  std::vector<DecayRow> rows;
  std::optional<double> slope;
};

// sup-norm of f - S_n over the grid (critical points injected per n),
// f realized as S_{N_ref} plus truncation bounds.
DecayTable uniform_decay_experiment(const TwoSidedSeq& seq,
                                    const std::vector<std::uint64_t>& n_list,
                                    const GridSpec& grid);

// sum_{k=1}^{n} (1/k) fhat(sign (n+k)); sign is +1 or -1. The modulus times
// 2 pi / kPhiBound lower-bounds the L1 distance ||f - S_n||.
std::complex<double> phi_functional(const TwoSidedSeq& fhat, std::uint64_t n, int sign);
double phi_lower_bound(const TwoSidedSeq& fhat, std::uint64_t n);

// max over the grid of |phi_{+-n}(x)| via the full two-exponential formula.
double phi_bound_check(std::uint64_t n, const GridSpec& grid);
// Same maxima for every n in [1, n_max] at once (incremental partial sums).
std::vector<double> phi_sup_sweep(std::uint64_t n_max, const GridSpec& grid);

struct L1Row {
  std::uint64_t n = 0;
  double l1 = 0.0;             // quadrature value of ||f - S_n||_L
  double l1_bound = 0.0;       // truncation addition to the interval
  double phi_lower = 0.0;      // certified lower bound on the same norm
  double log_surrogate = 0.0;  // max_{n<=|k|<=2n} |fhat(k)| log k
  double tau_gap_l1 = 0.0;     // ||tau_{2n,n} - S_n||_L (exact polynomial)
};

struct L1Table {
  std::vector<L1Row> rows;
  TrendFit tau_fit;      // tau_gap_l1 / log_surrogate across n
  bool lower_ok = true;  // phi_lower <= l1 + l1_bound on every row
};

L1Table l1_decay_experiment(const TwoSidedSeq& fhat, const std::vector<std::uint64_t>& n_list,
                            const GridSpec& grid);

// sum_{k=n}^{2n} |delta c_k| log k against max_{n<=k<=2n} |c_k| log k.
RatioTable lemma8_check(const SequenceRule& seq, const std::vector<std::uint64_t>& n_list);

// Target decay rate: psi positive and nonincreasing on [1, 2 n_max] with a
// finite doubling constant sup psi_n / psi_{2n}.
struct RateSpec {
  SequenceRule psi;
  double doubling_constant = 0.0;
};
RateSpec make_rate_spec(const SequenceRule& psi, std::uint64_t n_max);

struct RateRow {
  std::uint64_t n = 0;
  double psi = 0.0;
  double c1 = 0.0;  // (l1 + bound) / psi_n
  double c2 = 0.0;  // phi lower bound / psi_n
  double c3 = 0.0;  // max |fhat(+-n)| log n / psi_n
  double en_lo = 0.0, en_hi = 0.0;  // bracket of the best L1 approximation
};

struct RateReport {
  std::vector<RateRow> rows;
  double C1 = 0.0, C2 = 0.0, C3 = 0.0;  // sups of the per-n columns
  TrendFit fit1, fit2, fit3;
  bool consistent = false;  // all constants finite, no growing trend
};

RateReport rate_match_T6(const TwoSidedSeq& fhat, const RateSpec& rate,
                         const std::vector<std::uint64_t>& n_list, const GridSpec& grid);

}  // namespace seqclass
