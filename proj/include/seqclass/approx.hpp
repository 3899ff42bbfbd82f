#pragma once

#include <cstdint>
#include <vector>

#include "seqclass/fitting.hpp"
#include "seqclass/grid.hpp"
#include "seqclass/sector.hpp"
#include "seqclass/sequence.hpp"

namespace seqclass {

// The three-part right-hand quantity of the best-approximation equivalence:
//   term1 = max_{1<=k<=n} k (|c_{n+k}| + |c_{-n-k}|)           (exact)
//   term2 = max_{k>=2n+1} k |c_k - c_{-k}|                      (interval)
//   term3 = sum_{k>=2n+1} |c_k + c_{-k}|                        (interval)
// Intervals come from a finite scan plus weighted-sup / absolute-sum tail
// majorants; a scan that already dominates the tail collapses term2 to a
// point.
struct QBreakdown {
  std::uint64_t n = 0;
  double term1 = 0.0;
  double term2_lo = 0.0, term2_hi = 0.0;
  double term3_lo = 0.0, term3_hi = 0.0;
  double lo() const { return term1 + term2_lo + term3_lo; }
  double hi() const { return term1 + term2_hi + term3_hi; }
};

// Requires horizon >= 2n+1; throws Errc::capability when the tails cannot be
// certified finite.
QBreakdown theorem4_Q(const TwoSidedSeq& seq, std::uint64_t n, std::uint64_t horizon);

// Duality lower bound for the best sup-norm approximation by degree-n
// polynomials: (1/N) |sum_{k=1}^{N} (k c_{s(n+k)} + (N-k) c_{s(n+N+k)})| with
// s = sign. The underlying test kernel e^{i s(n+1)x} (sum_{k<N} e^{i s k x})^2
// has L1 mass 2 pi N and no frequencies of modulus <= n, so every degree-n
// polynomial drops out.
double en_lower_dual(const TwoSidedSeq& seq, std::uint64_t n, std::uint64_t N, int sign);

// Same bound from the real kernel pair (two-sided sum, mass 4 pi N).
double en_lower_dual_symmetric(const TwoSidedSeq& seq, std::uint64_t n, std::uint64_t N);

// Dyadic N choices {1, 2, 4, ..., <= max(1, 2n)}.
std::vector<std::uint64_t> default_N_list(std::uint64_t n);

// Certified enclosure of E_n(f) in the sup norm together with the theorem
// quantity. upper = grid sup of |f - S_n| plus truncation; lower = best of
// the duality functionals; ratios use the certified endpoint Q_hi.
struct ApproxBracket {
  std::uint64_t n = 0;
  double lower = 0.0;
  double upper = 0.0;
  double Q_lo = 0.0, Q_hi = 0.0;
  double q_over_upper = 0.0;
  double lower_over_q = 0.0;
};

// Both entry points first require criterion_uniform to certify f continuous
// (Errc::domain otherwise), then bracket per degree.
ApproxBracket en_bracket(const TwoSidedSeq& seq, std::uint64_t n,
                         const std::vector<std::uint64_t>& N_list, const GridSpec& grid,
                         std::uint64_t horizon);
std::vector<ApproxBracket> en_bracket_sweep(const TwoSidedSeq& seq,
                                            const std::vector<std::uint64_t>& n_list,
                                            const GridSpec& grid, std::uint64_t horizon);

// sum_{k>=2n+1} |c_k + c_{-k}| (upper interval endpoint) against the upper
// bracket of E_n(f). The symmetric sums must lie in the given sector up to
// the horizon (Errc::domain otherwise).
RatioTable lemma4_check(const TwoSidedSeq& seq, const std::vector<ApproxBracket>& brackets,
                        const SectorAngle& sector, std::uint64_t horizon);

// Grid sup of |sum_{k=1}^{n} c_{s(n+k)} sin kx| (both signs) against
// max_{1<=k<=n} k(|c_{n+k}| + |c_{-n-k}|).
RatioTable lemma5_check(const TwoSidedSeq& seq, const std::vector<std::uint64_t>& n_list,
                        const GridSpec& grid);

// Grid sup of the certified tail |sum_{k>=m} c_{s k} sin kx| (Abel value
// plus remainder, both signs) against max_{m<=k<=horizon} k(|c_k|+|c_{-k}|).
RatioTable lemma6_check(const TwoSidedSeq& seq, const std::vector<std::uint64_t>& m_list,
                        const GridSpec& grid, std::uint64_t horizon);

// Cosine-series ratio test: the side condition |sum_{k=n+1}^{2n} c_k| vs
// max_{1<=k<=n} k c_{n+k} must stay bounded; only then is the conclusion
// ||f - S_n|| vs the E_n lower bracket worth reporting.
struct Corollary1Report {
  RatioTable side_condition;
  bool hypothesis_ok = false;
  RatioTable conclusion;  // empty when the hypothesis fails
};
Corollary1Report corollary1_check(const SequenceRule& cos_coeffs,
                                  const std::vector<std::uint64_t>& n_list,
                                  const GridSpec& grid, std::uint64_t horizon);

}  // namespace seqclass
