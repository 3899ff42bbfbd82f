#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "seqclass/grid.hpp"
#include "seqclass/sequence.hpp"

namespace seqclass {

// Below this |x| the kernels switch to their limit/series forms.
inline constexpr double kTinyX = 1e-8;

// sin(k*x), cos(k*x), e^{ikx} with the argument product split via fma so the
// rounding of k*x itself is corrected to first order. Plain evaluation loses
// ~1e-13 absolute in the argument by k ~ 500, which the kernel quotients
// amplify past 1e-12; the split keeps identity residuals near 1e-14.
double sin_prod(double k, double x) noexcept;
double cos_prod(double k, double x) noexcept;
std::complex<double> unit_phase(double k, double x) noexcept;

// S_n(f, x) = sum_{k=-n}^{n} c_k e^{ikx}, compensated, k ascending with the
// +k and -k terms paired.
std::complex<double> partial_sum(const TwoSidedSeq& seq, std::uint64_t n, double x);

// sum_{k=1}^{n} b_k sin kx for a real rule.
double sine_partial(const SequenceRule& b, std::uint64_t n, double x);

// sum_{k=1}^{n} sin kx by the closed form sin(nx/2) sin((n+1)x/2) / sin(x/2),
// clamped to the certified envelope pi/x. Domain x in [0, pi]; x = 0 gives 0.
double sin_sum(std::uint64_t n, double x);

// sin((2k+1)x/2) / (2 sin(x/2)); the limit k + 1/2 for |x| < kTinyX.
double dirichlet(std::uint64_t k, double x);

// Conjugate-modified kernel, branched at |x| = 1/n_threshold:
//   |x| <  1/n: (cos(x/2) - cos((2k+1)x/2)) / (2 sin(x/2)),
//               evaluated as sin((k+1)x/2) sin(kx/2) / sin(x/2),
//               with the series k(k+1)x/2 below kTinyX;
//   |x| >= 1/n: -cos((2k+1)x/2) / (2 sin(x/2)).
// The original two conditions overlap at |x| = 1/n; this takes the second.
double dirichlet_star(std::uint64_t k, double x, std::uint64_t n_threshold);

// E_k = D_k + i D_k*.
std::complex<double> complex_kernel(std::uint64_t k, double x, std::uint64_t n_threshold);

// Delayed mean tau_{2n,n}(f,x) = (1/n) sum_{k=n}^{2n-1} S_k(f,x), computed as
// S_n plus increments weighted by (2n-k)/n.
std::complex<double> delayed_mean(const TwoSidedSeq& seq, std::uint64_t n, double x);

// sum_{k=N}^{infty} c_k sin kx by summation by parts against sin_sum:
//   value = sum_{k=N}^{H} (c_k - c_{k+1}) G_k(x) - c_N G_{N-1}(x),
//   |true - value| <= remainder_bound = (pi/x) * tail_variation(H+1).
// Requires a certified finite variation tail and a null sequence (checked as
// |c_{H+1}| <= tail_variation(H+1) + eps); otherwise Errc::capability.
struct AbelTail {
  std::complex<double> value;
  double remainder_bound = 0.0;
};
AbelTail abel_tail(const SequenceRule& seq, std::uint64_t N, double x, std::uint64_t horizon);

struct NormPair {
  double sup = 0.0;
  double l1 = 0.0;
};

// sup_i |v_i| and the composite trapezoid of |v| over the (possibly
// nonuniform) abscissae. even_double doubles the integral, for integrands on
// [0, pi] declared symmetric about 0.
NormPair norms(const std::vector<double>& xs, const std::vector<std::complex<double>>& values,
               bool even_double = false);

// One pass per grid point through k = 0..max(cuts), recording the partial sum
// at every cut. cuts must be nonempty; output[j] aligns with cuts[j].
std::vector<std::vector<std::complex<double>>> partial_sums_on_grid(
    const TwoSidedSeq& seq, const std::vector<std::uint64_t>& cuts,
    const std::vector<double>& xs);

// tau_{2n,n}(f,x) - S_n(f,x) on the grid (a trig polynomial; no truncation).
std::vector<std::complex<double>> delayed_mean_minus_sn_on_grid(const TwoSidedSeq& seq,
                                                                std::uint64_t n,
                                                                const std::vector<double>& xs);

// Grid evaluation bundle with both norms and the neglected-tail bounds.
struct SeriesEval {
  std::vector<double> xs;
  std::vector<std::complex<double>> values;
  double sup_norm = 0.0;
  double l1_norm = 0.0;
  double truncation_sup = 0.0;  // pointwise bound on the neglected tail
  double truncation_l1 = 0.0;   // truncation_sup * domain length
};

// f - S_n realized as S_{N_ref} - S_n with N_ref = max(16 n, 4096) (or the
// given reference); truncation bounds come from the rules' absolute tails.
SeriesEval eval_tail(const TwoSidedSeq& seq, std::uint64_t n, const GridSpec& grid,
                     std::uint64_t n_ref = 0);

// Coefficient mappings: sum b_k sin kx and sum c_k cos kx as exponential
// series (c_{+-k} = -+(i/2) b_k, resp. c_{+-k} = c_k / 2 with c_0 kept).
TwoSidedSeq sine_series(const SequenceRule& b);
TwoSidedSeq cosine_series(const SequenceRule& c);

}  // namespace seqclass
