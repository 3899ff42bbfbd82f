#include "seqclass/approx.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "seqclass/convergence.hpp"
#include "seqclass/error.hpp"
#include "seqclass/summation.hpp"
#include "seqclass/trig_eval.hpp"

namespace seqclass {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_n_list(const std::vector<std::uint64_t>& n_list, const char* who) {
  if (n_list.empty() || n_list.front() < 1)
    throw Error(Errc::bad_config, std::string(who) + " needs a nonempty n list from 1 up");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw Error(Errc::bad_config, std::string(who) + " needs a strictly increasing n list");
}

void require_continuous(const TwoSidedSeq& seq, std::uint64_t horizon) {
  auto rep = criterion_uniform(seq, horizon);
  if (rep.verdict != Verdict::satisfied)
    throw Error(Errc::domain,
                "coefficients are not certified to give a continuous function (" +
                    std::string(verdict_name(rep.verdict)) + ": " + rep.detail + ")");
}

std::complex<double> coeff(const TwoSidedSeq& seq, int sign, std::uint64_t k) {
  return seq.coefficient(sign * std::int64_t(k));
}

}  // namespace

QBreakdown theorem4_Q(const TwoSidedSeq& seq, std::uint64_t n, std::uint64_t horizon) {
  if (n < 1) throw Error(Errc::domain, "theorem4_Q needs n >= 1");
  if (horizon < 2 * n + 1) throw Error(Errc::domain, "theorem4_Q needs horizon >= 2n+1");

  QBreakdown q;
  q.n = n;
  for (std::uint64_t k = 1; k <= n; ++k)
    q.term1 = std::max(q.term1, double(k) * (std::abs(coeff(seq, 1, n + k)) +
                                             std::abs(coeff(seq, -1, n + k))));

  double scan2 = 0.0;
  Compensated fin3;
  for (std::uint64_t k = 2 * n + 1; k <= horizon; ++k) {
    std::complex<double> ck = coeff(seq, 1, k), cmk = coeff(seq, -1, k);
    scan2 = std::max(scan2, double(k) * std::abs(ck - cmk));
    fin3.add(std::abs(ck + cmk));
  }
  double tail2 = seq.pos.tail_weighted_sup(double(horizon) + 1.0) +
                 seq.neg.tail_weighted_sup(double(horizon) + 1.0);
  q.term2_lo = scan2;
  q.term2_hi = std::max(scan2, tail2);
  double tail3 = seq.symmetric_rule().tail_abs_sum(double(horizon) + 1.0);
  q.term3_lo = fin3.value();
  q.term3_hi = fin3.value() + tail3;
  if (!std::isfinite(q.hi()))
    throw Error(Errc::capability, "theorem4_Q: tail beyond the horizon cannot be certified");
  return q;
}

double en_lower_dual(const TwoSidedSeq& seq, std::uint64_t n, std::uint64_t N, int sign) {
  if (N < 1 || (sign != 1 && sign != -1))
    throw Error(Errc::domain, "en_lower_dual needs N >= 1 and sign +-1");
  ComplexSum acc;
  for (std::uint64_t k = 1; k <= N; ++k) {
    acc.add(coeff(seq, sign, n + k) * double(k));
    acc.add(coeff(seq, sign, n + N + k) * double(N - k));
  }
  return std::abs(acc.value()) / double(N);
}

double en_lower_dual_symmetric(const TwoSidedSeq& seq, std::uint64_t n, std::uint64_t N) {
  if (N < 1) throw Error(Errc::domain, "en_lower_dual_symmetric needs N >= 1");
  ComplexSum acc;
  for (std::uint64_t k = 1; k <= N; ++k) {
    acc.add((coeff(seq, 1, n + k) + coeff(seq, -1, n + k)) * double(k));
    acc.add((coeff(seq, 1, n + N + k) + coeff(seq, -1, n + N + k)) * double(N - k));
  }
  return std::abs(acc.value()) / (2.0 * double(N));
}

std::vector<std::uint64_t> default_N_list(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  std::uint64_t cap = std::max<std::uint64_t>(1, 2 * n);
  while (out.back() * 2 <= cap) out.push_back(out.back() * 2);
  return out;
}

namespace {

double best_dual(const TwoSidedSeq& seq, std::uint64_t n,
                 const std::vector<std::uint64_t>& N_list) {
  double best = 0.0;
  for (std::uint64_t N : N_list) {
    best = std::max(best, en_lower_dual(seq, n, N, 1));
    best = std::max(best, en_lower_dual(seq, n, N, -1));
    best = std::max(best, en_lower_dual_symmetric(seq, n, N));
  }
  return best;
}

ApproxBracket assemble_bracket(const TwoSidedSeq& seq, std::uint64_t n, double upper,
                               const std::vector<std::uint64_t>& N_list,
                               std::uint64_t horizon) {
  ApproxBracket b;
  b.n = n;
  b.upper = upper;
  b.lower = best_dual(seq, n, N_list);
  QBreakdown q = theorem4_Q(seq, n, horizon);
  b.Q_lo = q.lo();
  b.Q_hi = q.hi();
  b.q_over_upper = ext_ratio(b.Q_hi, b.upper);
  b.lower_over_q = ext_ratio(b.lower, b.Q_hi);
  return b;
}

}  // namespace

ApproxBracket en_bracket(const TwoSidedSeq& seq, std::uint64_t n,
                         const std::vector<std::uint64_t>& N_list, const GridSpec& grid,
                         std::uint64_t horizon) {
  require_continuous(seq, horizon);
  SeriesEval ev = eval_tail(seq, n, with_critical_points(grid, {n}));
  return assemble_bracket(seq, n, ev.sup_norm + ev.truncation_sup, N_list, horizon);
}

std::vector<ApproxBracket> en_bracket_sweep(const TwoSidedSeq& seq,
                                            const std::vector<std::uint64_t>& n_list,
                                            const GridSpec& grid, std::uint64_t horizon) {
  require_n_list(n_list, "en_bracket_sweep");
  require_continuous(seq, horizon);
  auto xs = with_critical_points(grid, n_list).realize();
  std::uint64_t n_ref = std::max<std::uint64_t>(16 * n_list.back(), 4096);
  std::vector<std::uint64_t> cuts = n_list;
  cuts.push_back(n_ref);
  auto sums = partial_sums_on_grid(seq, cuts, xs);
  double trunc = seq.pos.tail_abs_sum(double(n_ref) + 1.0) +
                 seq.neg.tail_abs_sum(double(n_ref) + 1.0);

  std::vector<ApproxBracket> out;
  const auto& ref = sums.back();
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      sup = std::max(sup, std::abs(ref[i] - sums[j][i]));
    out.push_back(
        assemble_bracket(seq, n_list[j], sup + trunc, default_N_list(n_list[j]), horizon));
  }
  return out;
}

RatioTable lemma4_check(const TwoSidedSeq& seq, const std::vector<ApproxBracket>& brackets,
                        const SectorAngle& sector, std::uint64_t horizon) {
  for (std::uint64_t k = 1; k <= horizon; ++k)
    if (!in_sector(seq.symmetric_sum(k), sector))
      throw Error(Errc::domain, "symmetric sum c_" + std::to_string(k) + " + c_-" +
                                    std::to_string(k) + " leaves the required sector");
  double tail_all = seq.symmetric_rule().tail_abs_sum(double(horizon) + 1.0);
  std::vector<RatioRow> rows;
  for (const auto& b : brackets) {
    Compensated fin;
    for (std::uint64_t k = 2 * b.n + 1; k <= horizon; ++k)
      fin.add(std::abs(seq.symmetric_sum(k)));
    double lhs = fin.value() + tail_all;
    rows.push_back({b.n, lhs, b.upper, ext_ratio(lhs, b.upper)});
  }
  return make_ratio_table("sum |c_k + c_-k| beyond 2n vs upper bracket", std::move(rows));
}

RatioTable lemma5_check(const TwoSidedSeq& seq, const std::vector<std::uint64_t>& n_list,
                        const GridSpec& grid) {
  require_n_list(n_list, "lemma5_check");
  auto xs = with_critical_points(grid, n_list).realize();
  std::vector<RatioRow> rows;
  for (std::uint64_t n : n_list) {
    double rhs = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k)
      rhs = std::max(rhs, double(k) * (std::abs(coeff(seq, 1, n + k)) +
                                       std::abs(coeff(seq, -1, n + k))));
    double lhs = 0.0;
    for (int sign : {1, -1}) {
      std::vector<std::complex<double>> c(n);
      for (std::uint64_t k = 1; k <= n; ++k) c[k - 1] = coeff(seq, sign, n + k);
      for (double x : xs) {
        ComplexSum acc;
        for (std::uint64_t k = 1; k <= n; ++k) acc.add(c[k - 1] * sin_prod(double(k), x));
        lhs = std::max(lhs, std::abs(acc.value()));
      }
    }
    rows.push_back({n, lhs, rhs, ext_ratio(lhs, rhs)});
  }
  return make_ratio_table("sup |sum c_{s(n+k)} sin kx| vs max k(|c_{n+k}|+|c_{-n-k}|)",
                          std::move(rows));
}

RatioTable lemma6_check(const TwoSidedSeq& seq, const std::vector<std::uint64_t>& m_list,
                        const GridSpec& grid, std::uint64_t horizon) {
  require_n_list(m_list, "lemma6_check");
  if (horizon <= m_list.back())
    throw Error(Errc::domain, "lemma6_check needs horizon beyond the m list");
  auto xs = with_critical_points(grid, m_list).realize();
  std::vector<RatioRow> rows;
  for (std::uint64_t m : m_list) {
    double lhs = 0.0;
    for (int sign : {1, -1}) {
      const SequenceRule& side = sign == 1 ? seq.pos : seq.neg;
      for (double x : xs) {
        if (!(x > 0.0 && x < kPi)) continue;  // the sine tail vanishes at 0 and pi
        AbelTail at = abel_tail(side, m, x, horizon);
        lhs = std::max(lhs, std::abs(at.value) + at.remainder_bound);
      }
    }
    double rhs = 0.0;
    for (std::uint64_t k = m; k <= horizon; ++k)
      rhs = std::max(rhs, double(k) * (std::abs(coeff(seq, 1, k)) + std::abs(coeff(seq, -1, k))));
    rows.push_back({m, lhs, rhs, ext_ratio(lhs, rhs)});
  }
  return make_ratio_table("sup of certified |sum_{k>=m} c_{s k} sin kx| vs max k(|c_k|+|c_-k|)",
                          std::move(rows));
}

Corollary1Report corollary1_check(const SequenceRule& cos_coeffs,
                                  const std::vector<std::uint64_t>& n_list,
                                  const GridSpec& grid, std::uint64_t horizon) {
  require_n_list(n_list, "corollary1_check");
  if (!cos_coeffs.is_real())
    throw Error(Errc::domain, "corollary1_check requires a real-valued rule");

  Corollary1Report rep;
  std::vector<RatioRow> side;
  for (std::uint64_t n : n_list) {
    Compensated sum;
    for (std::uint64_t k = n + 1; k <= 2 * n; ++k) sum.add(cos_coeffs.eval(k).real());
    double rhs = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k)
      rhs = std::max(rhs, double(k) * std::abs(cos_coeffs.eval(n + k)));
    double lhs = std::abs(sum.value());
    side.push_back({n, lhs, rhs, ext_ratio(lhs, rhs)});
  }
  rep.side_condition =
      make_ratio_table("|sum_{k=n+1}^{2n} c_k| vs max k c_{n+k}", std::move(side));
  rep.hypothesis_ok =
      std::isfinite(rep.side_condition.fit.constant) && !rep.side_condition.fit.grows();
  rep.conclusion = make_ratio_table("sup |f - S_n| vs E_n lower bracket", {});
  if (!rep.hypothesis_ok) return rep;

  TwoSidedSeq f = cosine_series(cos_coeffs);
  auto brackets = en_bracket_sweep(f, n_list, grid, horizon);
  std::vector<RatioRow> rows;
  for (const auto& b : brackets)
    rows.push_back({b.n, b.upper, b.lower, ext_ratio(b.upper, b.lower)});
  rep.conclusion = make_ratio_table("sup |f - S_n| vs E_n lower bracket", std::move(rows));
  return rep;
}

}  // namespace seqclass
