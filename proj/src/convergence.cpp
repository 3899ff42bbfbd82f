#include "seqclass/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "seqclass/error.hpp"
#include "seqclass/summation.hpp"
#include "seqclass/trig_eval.hpp"

namespace seqclass {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// A decay quantity counts as empirically non-vanishing when its top-window
// samples sit above this floor without a clear downward trend.
constexpr double kViolationFloor = 1e-6;
constexpr double kViolationSlope = -0.05;

std::string fmt(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

// Integer lattice with ~8 samples per octave, deduplicated and never stalling.
std::vector<std::uint64_t> sample_lattice(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  double x = double(lo);
  while (true) {
    auto n = std::uint64_t(std::llround(x));
    if (n < lo) n = lo;
    if (n > hi) break;
    out.push_back(n);
    x = std::max(x * 1.0905077326652577, double(n + 1));
  }
  return out;
}

struct Decision {
  Verdict verdict = Verdict::inconclusive;
  std::optional<std::uint64_t> witness;
  std::string note;
};

Decision decide(bool certified, const std::vector<DecaySample>& samples,
                std::uint64_t horizon) {
  if (certified) return {Verdict::satisfied, std::nullopt, "certified by tail majorant"};
  std::vector<std::pair<double, double>> pts;
  pts.reserve(samples.size());
  double floor = kInf, peak = -1.0;
  std::uint64_t peak_n = 0;
  for (const auto& s : samples) {
    pts.emplace_back(double(s.n), s.value);
    if (s.n > horizon / 4 && s.n <= horizon && std::isfinite(s.value)) {
      floor = std::min(floor, s.value);
      if (s.value > peak) {
        peak = s.value;
        peak_n = s.n;
      }
    }
  }
  auto slope = top_decades_slope(pts, double(horizon));
  if (floor >= kViolationFloor && slope && *slope > kViolationSlope)
    return {Verdict::violated, peak_n,
            "samples stay at " + fmt(floor) + " or above (slope " + fmt(*slope) + ")"};
  return {Verdict::inconclusive, std::nullopt,
          "no certificate; samples do not witness a violation"};
}

void require_horizon(std::uint64_t horizon, const char* who) {
  if (horizon < 4) throw Error(Errc::domain, std::string(who) + " needs horizon >= 4");
}

void require_n_list(const std::vector<std::uint64_t>& n_list, const char* who) {
  if (n_list.empty() || n_list.front() < 1)
    throw Error(Errc::bad_config, std::string(who) + " needs a nonempty n list from 1 up");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw Error(Errc::bad_config, std::string(who) + " needs a strictly increasing n list");
}

double coeff_mag(const TwoSidedSeq& seq, std::int64_t k) { return std::abs(seq.coefficient(k)); }

}  // namespace

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

CriterionReport criterion_uniform(const TwoSidedSeq& seq, std::uint64_t horizon) {
  require_horizon(horizon, "criterion_uniform");
  CriterionReport rep;
  rep.criterion = "n(|c_n|+|c_-n|) -> 0 and sum |c_n + c_-n| < inf";
  rep.sequence = seq.describe();
  rep.horizon = horizon;

  for (std::uint64_t n : sample_lattice(1, horizon))
    rep.samples.push_back(
        {n, double(n) * (coeff_mag(seq, std::int64_t(n)) + coeff_mag(seq, -std::int64_t(n)))});
  bool cert1 = seq.pos.tail_weighted_sup(kInf) + seq.neg.tail_weighted_sup(kInf) < kCertifiedEps;
  Decision d1 = decide(cert1, rep.samples, horizon);

  std::vector<DecaySample> blocks;
  for (std::uint64_t m : sample_lattice(1, horizon / 2)) {
    Compensated b;
    for (std::uint64_t k = m + 1; k <= 2 * m; ++k) b.add(std::abs(seq.symmetric_sum(k)));
    blocks.push_back({m, b.value()});
  }
  bool cert2 = std::isfinite(seq.symmetric_rule().tail_abs_sum(1.0));
  Decision d2 = decide(cert2, blocks, horizon / 2);

  if (d1.verdict == Verdict::violated) {
    rep.verdict = Verdict::violated;
    rep.witness = d1.witness;
  } else if (d2.verdict == Verdict::violated) {
    rep.verdict = Verdict::violated;
    rep.witness = d2.witness;
  } else if (d1.verdict == Verdict::satisfied && d2.verdict == Verdict::satisfied) {
    rep.verdict = Verdict::satisfied;
  }
  rep.detail = "weighted decay: " + d1.note + "; symmetric summability: " + d2.note;
  return rep;
}

CriterionReport criterion_sine_T3(const SequenceRule& b, std::uint64_t horizon) {
  require_horizon(horizon, "criterion_sine_T3");
  if (!b.is_real()) throw Error(Errc::domain, "criterion_sine_T3 requires a real rule");
  CriterionReport rep;
  rep.criterion = "n b_n -> 0";
  rep.sequence = b.describe();
  rep.horizon = horizon;
  for (std::uint64_t n : sample_lattice(1, horizon)) {
    double v = b.eval(n).real();
    if (v < 0.0)
      throw Error(Errc::domain, "criterion_sine_T3 requires nonnegative terms; b_" +
                                    std::to_string(n) + " < 0");
    rep.samples.push_back({n, double(n) * v});
  }
  Decision d = decide(b.tail_weighted_sup(kInf) < kCertifiedEps, rep.samples, horizon);
  rep.verdict = d.verdict;
  rep.witness = d.witness;
  rep.detail = d.note;
  return rep;
}

CriterionReport criterion_L1_T5(const TwoSidedSeq& fhat, std::uint64_t horizon) {
  require_horizon(horizon, "criterion_L1_T5");
  CriterionReport rep;
  rep.criterion = "|fhat(+-n)| log n -> 0";
  rep.sequence = fhat.describe();
  rep.horizon = horizon;
  for (std::uint64_t n : sample_lattice(2, horizon))
    rep.samples.push_back(
        {n, (coeff_mag(fhat, std::int64_t(n)) + coeff_mag(fhat, -std::int64_t(n))) *
                std::log(double(n))});
  // sup k|c_k| finite already forces |c_k| log k -> 0, so finiteness of the
  // weighted majorant is the certificate here.
  bool cert = std::isfinite(fhat.pos.tail_weighted_sup(kInf)) &&
              std::isfinite(fhat.neg.tail_weighted_sup(kInf));
  Decision d = decide(cert, rep.samples, horizon);
  rep.verdict = d.verdict;
  rep.witness = d.witness;
  rep.detail = d.note;
  return rep;
}

DecayTable uniform_decay_experiment(const TwoSidedSeq& seq,
                                    const std::vector<std::uint64_t>& n_list,
                                    const GridSpec& grid) {
  require_n_list(n_list, "uniform_decay_experiment");
  auto xs = with_critical_points(grid, n_list).realize();
  std::uint64_t n_ref = std::max<std::uint64_t>(16 * n_list.back(), 4096);
  std::vector<std::uint64_t> cuts = n_list;
  cuts.push_back(n_ref);
  auto sums = partial_sums_on_grid(seq, cuts, xs);
  double trunc = seq.pos.tail_abs_sum(double(n_ref) + 1.0) +
                 seq.neg.tail_abs_sum(double(n_ref) + 1.0);

  DecayTable table;
  table.quantity = "sup |f - S_n| over the grid";
  const auto& ref = sums.back();
  std::vector<std::pair<double, double>> pts;
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      sup = std::max(sup, std::abs(ref[i] - sums[j][i]));
    table.rows.push_back({n_list[j], sup, trunc});
    pts.emplace_back(double(n_list[j]), sup);
  }
  table.slope = loglog_slope(pts);
  return table;
}

std::complex<double> phi_functional(const TwoSidedSeq& fhat, std::uint64_t n, int sign) {
  if (n < 1 || (sign != 1 && sign != -1))
    throw Error(Errc::domain, "phi_functional needs n >= 1 and sign +-1");
  ComplexSum acc;
  for (std::uint64_t k = 1; k <= n; ++k)
    acc.add(fhat.coefficient(sign * std::int64_t(n + k)) / double(k));
  return acc.value();
}

double phi_lower_bound(const TwoSidedSeq& fhat, std::uint64_t n) {
  double m = std::max(std::abs(phi_functional(fhat, n, 1)), std::abs(phi_functional(fhat, n, -1)));
  return m * (2.0 * kPi / kPhiBound);
}

namespace {

void guard_phi(double sup) {
  if (sup > kPhiBound * (1.0 + 1e-9))
    throw std::logic_error("phi test function exceeded its proven bound 6 sqrt(pi); "
                           "the reconstructed formula must be wrong");
}

}  // namespace

double phi_bound_check(std::uint64_t n, const GridSpec& grid) {
  if (n < 1) throw Error(Errc::domain, "phi_bound_check needs n >= 1");
  double sup = 0.0;
  for (double x : grid.realize()) {
    for (int sign : {1, -1}) {
      ComplexSum acc;
      for (std::uint64_t k = 1; k <= n; ++k) {
        double a = double(k) - sign * double(n);
        double b = -(double(k) + sign * double(n));
        acc.add((unit_phase(a, x) - unit_phase(b, x)) / double(k));
      }
      sup = std::max(sup, std::abs(acc.value()));
    }
  }
  guard_phi(sup);
  return sup;
}

std::vector<double> phi_sup_sweep(std::uint64_t n_max, const GridSpec& grid) {
  if (n_max < 1) throw Error(Errc::domain, "phi_sup_sweep needs n_max >= 1");
  auto xs = grid.realize();
  std::vector<double> out(n_max, 0.0);
  // |phi_{+-n}(x)| = 2 |sum_{k=1}^{n} sin(kx)/k|, so one running sum per
  // grid point serves every n at once.
  for (double x : xs) {
    Compensated s;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      s.add(sin_prod(double(n), x) / double(n));
      double v = 2.0 * std::abs(s.value());
      if (v > out[n - 1]) out[n - 1] = v;
    }
  }
  for (double v : out) guard_phi(v);
  return out;
}

L1Table l1_decay_experiment(const TwoSidedSeq& fhat, const std::vector<std::uint64_t>& n_list,
                            const GridSpec& grid) {
  require_n_list(n_list, "l1_decay_experiment");
  GridSpec gridc = with_critical_points(grid, n_list);
  auto xs = gridc.realize();
  // Interval half-width is 2 pi times the reference tail mass. For square
  // decay the norms shrink like 0.13/n, so the reference must sit far enough
  // out that the width stays under the last dyadic gap; 16x leaves the top
  // interval wider than the measured value, 128x keeps enclosures disjoint.
  std::uint64_t n_ref = std::max<std::uint64_t>(128 * n_list.back(), 4096);
  std::vector<std::uint64_t> cuts = n_list;
  cuts.push_back(n_ref);
  auto sums = partial_sums_on_grid(fhat, cuts, xs);
  double trunc_l1 = (fhat.pos.tail_abs_sum(double(n_ref) + 1.0) +
                     fhat.neg.tail_abs_sum(double(n_ref) + 1.0)) *
                    (gridc.hi() - gridc.lo());

  L1Table table;
  std::vector<std::pair<double, double>> tau_ratio;
  std::vector<std::complex<double>> diff(xs.size());
  const auto& ref = sums.back();
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    std::uint64_t n = n_list[j];
    for (std::size_t i = 0; i < xs.size(); ++i) diff[i] = ref[i] - sums[j][i];
    L1Row row;
    row.n = n;
    row.l1 = norms(xs, diff).l1;
    row.l1_bound = trunc_l1;
    row.phi_lower = phi_lower_bound(fhat, n);
    for (std::uint64_t k = n; k <= 2 * n; ++k)
      row.log_surrogate =
          std::max(row.log_surrogate,
                   std::max(coeff_mag(fhat, std::int64_t(k)), coeff_mag(fhat, -std::int64_t(k))) *
                       std::log(double(k)));
    row.tau_gap_l1 = norms(xs, delayed_mean_minus_sn_on_grid(fhat, n, xs)).l1;
    if (row.phi_lower > row.l1 + row.l1_bound + 1e-9) table.lower_ok = false;
    tau_ratio.emplace_back(double(n), ext_ratio(row.tau_gap_l1, row.log_surrogate));
    table.rows.push_back(row);
  }
  table.tau_fit = fit_trend(tau_ratio);
  return table;
}

RatioTable lemma8_check(const SequenceRule& seq, const std::vector<std::uint64_t>& n_list) {
  require_n_list(n_list, "lemma8_check");
  std::vector<RatioRow> rows;
  for (std::uint64_t n : n_list) {
    Compensated lhs;
    double rhs = 0.0;
    for (std::uint64_t k = n; k <= 2 * n; ++k) {
      double lg = std::log(double(k));
      lhs.add(std::abs(seq.delta(k)) * lg);
      rhs = std::max(rhs, std::abs(seq.eval(k)) * lg);
    }
    rows.push_back({n, lhs.value(), rhs, ext_ratio(lhs.value(), rhs)});
  }
  return make_ratio_table("sum |dc_k| log k over [n,2n] vs max |c_k| log k", std::move(rows));
}

RateSpec make_rate_spec(const SequenceRule& psi, std::uint64_t n_max) {
  if (n_max < 1) throw Error(Errc::domain, "make_rate_spec needs n_max >= 1");
  if (!psi.is_real()) throw Error(Errc::domain, "rate sequence must be real");
  double prev = kInf;
  for (std::uint64_t n = 1; n <= 2 * n_max; ++n) {
    double v = psi.eval(n).real();
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(Errc::domain, "rate sequence must stay positive on [1, 2 n_max]");
    if (v > prev * (1.0 + 1e-12))
      throw Error(Errc::domain, "rate sequence must be nonincreasing on [1, 2 n_max]");
    prev = v;
  }
  RateSpec spec{psi, 0.0};
  for (std::uint64_t n = 1; n <= n_max; ++n)
    spec.doubling_constant =
        std::max(spec.doubling_constant, psi.eval(n).real() / psi.eval(2 * n).real());
  return spec;
}

RateReport rate_match_T6(const TwoSidedSeq& fhat, const RateSpec& rate,
                         const std::vector<std::uint64_t>& n_list, const GridSpec& grid) {
  require_n_list(n_list, "rate_match_T6");
  GridSpec gridc = with_critical_points(grid, n_list);
  auto xs = gridc.realize();
  std::uint64_t n_ref = std::max<std::uint64_t>(16 * n_list.back(), 4096);
  std::vector<std::uint64_t> cuts = n_list;
  cuts.push_back(n_ref);
  auto sums = partial_sums_on_grid(fhat, cuts, xs);
  double trunc_l1 = (fhat.pos.tail_abs_sum(double(n_ref) + 1.0) +
                     fhat.neg.tail_abs_sum(double(n_ref) + 1.0)) *
                    (gridc.hi() - gridc.lo());

  RateReport rep;
  std::vector<std::pair<double, double>> p1, p2, p3;
  std::vector<std::complex<double>> diff(xs.size());
  const auto& ref = sums.back();
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    std::uint64_t n = n_list[j];
    double psi_n = rate.psi.eval(n).real();
    if (!(psi_n > 0.0)) throw Error(Errc::domain, "rate sequence vanished inside the n list");
    for (std::size_t i = 0; i < xs.size(); ++i) diff[i] = ref[i] - sums[j][i];

    RateRow row;
    row.n = n;
    row.psi = psi_n;
    double l1 = norms(xs, diff).l1;
    double phi_max = std::max(std::abs(phi_functional(fhat, n, 1)),
                              std::abs(phi_functional(fhat, n, -1)));
    double harmonic = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k) harmonic += 1.0 / double(k);
    double logterm = std::max(coeff_mag(fhat, std::int64_t(n)), coeff_mag(fhat, -std::int64_t(n))) *
                     std::log(double(n));
    row.c1 = (l1 + trunc_l1) / psi_n;
    row.c2 = (phi_max * 2.0 * kPi / kPhiBound) / psi_n;
    row.c3 = logterm / psi_n;
    // The dual test functions sum_k (1/k) e^{+-i(n+k)x} (sup norm = harmonic
    // number) and e^{+-i(n+1)x} both vanish on degree-n polynomials, so they
    // bound the best L1 approximation from below; phi itself does not.
    row.en_lo = std::max(phi_max * 2.0 * kPi / harmonic,
                         2.0 * kPi *
                             std::max(coeff_mag(fhat, std::int64_t(n + 1)),
                                      coeff_mag(fhat, -std::int64_t(n + 1))));
    row.en_hi = l1 + trunc_l1;
    rep.rows.push_back(row);
    p1.emplace_back(double(n), row.c1);
    p2.emplace_back(double(n), row.c2);
    p3.emplace_back(double(n), row.c3);
  }
  rep.fit1 = fit_trend(p1);
  rep.fit2 = fit_trend(p2);
  rep.fit3 = fit_trend(p3);
  rep.C1 = rep.fit1.constant;
  rep.C2 = rep.fit2.constant;
  rep.C3 = rep.fit3.constant;
  rep.consistent = std::isfinite(rep.C1) && std::isfinite(rep.C2) && std::isfinite(rep.C3) &&
                   !rep.fit1.grows() && !rep.fit2.grows() && !rep.fit3.grows();
  return rep;
}

}  // namespace seqclass
