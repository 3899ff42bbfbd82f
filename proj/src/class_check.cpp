#include "seqclass/class_check.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <limits>

#include "seqclass/error.hpp"
#include "seqclass/fitting.hpp"
#include "seqclass/summation.hpp"

namespace seqclass {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAlphaCap = 64.0;

// Values, moduli and a compensated prefix of |delta c_k|, all indexed from 1.
// pre[k] accumulates |c_1 - c_2| .. |c_k - c_{k+1}|, so block sums over
// [m, M] come out of prefix_gap(pre[m-1], pre[M]) without cancellation loss.
struct SweepCache {
  std::vector<std::complex<double>> val;  // val[k] = c_k, k in [1, size+1]
  std::vector<double> mag;
  std::vector<Compensated> pre;

  SweepCache(const SequenceRule& seq, std::uint64_t size) {
    val.resize(size + 2);
    mag.resize(size + 2);
    for (std::uint64_t k = 1; k <= size + 1; ++k) {
      val[k] = seq.eval(k);
    }
    for (std::uint64_t k = 1; k <= size + 1; ++k) mag[k] = std::abs(val[k]);
    pre.resize(size + 1);
    Compensated acc;
    for (std::uint64_t k = 1; k <= size; ++k) {
      acc.add(std::abs(val[k] - val[k + 1]));
      pre[k] = acc;
    }
  }

  double variation(std::uint64_t m, std::uint64_t M) const {
    return prefix_gap(pre[m - 1], pre[M]);
  }
};

// Window maxima of mag over [m, m+N0) for every m in [1, horizon], via a
// monotonic deque so wide windows stay linear.
std::vector<double> window_maxima(const std::vector<double>& mag, std::uint64_t horizon,
                                  std::uint64_t N0) {
  std::vector<double> out(horizon + 1, 0.0);
  std::deque<std::uint64_t> q;
  std::uint64_t hi = 0;  // indices (hi, ...] already pushed
  for (std::uint64_t m = 1; m <= horizon; ++m) {
    while (hi < m + N0 - 1) {
      ++hi;
      while (!q.empty() && mag[q.back()] <= mag[hi]) q.pop_back();
      q.push_back(hi);
    }
    while (q.front() < m) q.pop_front();
    out[m] = mag[q.front()];
  }
  return out;
}

void require_real(const SequenceRule& seq, const char* who) {
  if (!seq.is_real())
    throw Error(Errc::domain, std::string(who) + " requires a real-valued rule");
}

// Exponent the step n -> n+1 demands of c_n / n^alpha nonincreasing, under
// the zero conventions: a positive term after a zero is irreparable (+inf);
// a zero after anything imposes nothing. Negative terms are rejected by the
// caller before this runs.
double cqms_step(double cn, double cn1, std::uint64_t n) {
  if (cn1 == 0.0) return 0.0;
  if (cn == 0.0) return kInf;
  double a = std::log(cn1 / cn) / std::log(double(n + 1) / double(n));
  return a > 0.0 ? a : 0.0;
}

double cqms_guard(std::complex<double> c, std::uint64_t n) {
  if (c.imag() != 0.0 || c.real() < 0.0)
    throw Error(Errc::domain, "cqms is defined for real nonnegative sequences; c_" +
                                  std::to_string(n) + " violates that");
  return c.real();
}

}  // namespace

const char* class_name(SeqClass c) noexcept {
  switch (c) {
    case SeqClass::MS: return "ms";
    case SeqClass::CQMS: return "cqms";
    case SeqClass::RBVS: return "rbvs";
    case SeqClass::GBVS: return "gbvs";
    case SeqClass::NBVS: return "nbvs";
  }
  return "?";
}

std::optional<SeqClass> class_from_name(const std::string& name) noexcept {
  if (name == "ms") return SeqClass::MS;
  if (name == "cqms") return SeqClass::CQMS;
  if (name == "rbvs") return SeqClass::RBVS;
  if (name == "gbvs") return SeqClass::GBVS;
  if (name == "nbvs") return SeqClass::NBVS;
  return std::nullopt;
}

double nbvs_ratio(const SequenceRule& seq, std::uint64_t m) {
  if (m < 1) throw Error(Errc::domain, "nbvs_ratio needs m >= 1");
  double num = block_variation(seq, m, 2 * m);
  double den = std::abs(seq.eval(m)) + std::abs(seq.eval(2 * m));
  return ext_ratio(num, den);
}

double gbvs_ratio(const SequenceRule& seq, std::uint64_t m, std::uint64_t N0) {
  if (m < 1 || N0 < 1) throw Error(Errc::domain, "gbvs_ratio needs m >= 1 and N0 >= 1");
  double num = block_variation(seq, m, 2 * m);
  double den = 0.0;
  for (std::uint64_t n = m; n < m + N0; ++n) den = std::max(den, std::abs(seq.eval(n)));
  return ext_ratio(num, den);
}

double rbvs_ratio(const SequenceRule& seq, std::uint64_t m, std::uint64_t horizon) {
  if (m < 1 || horizon < m) throw Error(Errc::domain, "rbvs_ratio needs 1 <= m <= horizon");
  Compensated num;
  num.add(block_variation(seq, m, horizon));
  num.add(seq.tail_variation(double(horizon) + 1.0));
  return ext_ratio(num.value(), std::abs(seq.eval(m)));
}

double cqms_min_alpha(const SequenceRule& seq, std::uint64_t horizon) {
  if (horizon < 2) throw Error(Errc::domain, "cqms_min_alpha needs horizon >= 2");
  double cn = cqms_guard(seq.eval(1), 1);
  double sup = 0.0;
  for (std::uint64_t n = 1; n < horizon; ++n) {
    double cn1 = cqms_guard(seq.eval(n + 1), n + 1);
    sup = std::max(sup, cqms_step(cn, cn1, n));
    cn = cn1;
  }
  return sup > kAlphaCap ? kInf : sup;
}

ClassVerdict check_class(const SequenceRule& seq, SeqClass cls, std::uint64_t horizon,
                         std::uint64_t N0) {
  if (horizon < 4) throw Error(Errc::domain, "check_class needs horizon >= 4");
  if (N0 < 1) throw Error(Errc::domain, "check_class needs N0 >= 1");
  if (cls == SeqClass::MS || cls == SeqClass::CQMS) require_real(seq, class_name(cls));

  std::uint64_t span = std::max(2 * horizon, horizon + N0 - 1);
  SweepCache cache(seq, span);

  ClassVerdict v;
  v.cls = cls;
  v.horizon = horizon;
  v.N0 = (cls == SeqClass::GBVS) ? N0 : 1;
  v.ratios.resize(horizon);

  switch (cls) {
    case SeqClass::NBVS:
      for (std::uint64_t m = 1; m <= horizon; ++m)
        v.ratios[m - 1] = ext_ratio(cache.variation(m, 2 * m), cache.mag[m] + cache.mag[2 * m]);
      break;
    case SeqClass::GBVS: {
      auto wmax = window_maxima(cache.mag, horizon, N0);
      for (std::uint64_t m = 1; m <= horizon; ++m)
        v.ratios[m - 1] = ext_ratio(cache.variation(m, 2 * m), wmax[m]);
      break;
    }
    case SeqClass::RBVS: {
      double tail = seq.tail_variation(double(span) + 1.0);
      for (std::uint64_t m = 1; m <= horizon; ++m)
        v.ratios[m - 1] = ext_ratio(cache.variation(m, span) + tail, cache.mag[m]);
      break;
    }
    case SeqClass::MS:
      for (std::uint64_t m = 1; m <= horizon; ++m) {
        double a = cache.val[m].real(), b = cache.val[m + 1].real();
        v.ratios[m - 1] = (a >= b && b >= 0.0) ? 0.0 : kInf;
      }
      break;
    case SeqClass::CQMS: {
      double cn = cqms_guard(cache.val[1], 1);
      for (std::uint64_t n = 1; n < horizon; ++n) {
        double cn1 = cqms_guard(cache.val[n + 1], n + 1);
        v.ratios[n - 1] = cqms_step(cn, cn1, n);
        cn = cn1;
      }
      v.ratios.resize(horizon - 1);
      break;
    }
  }

  v.K_hat = 0.0;
  v.witness_m = 1;
  std::vector<std::pair<double, double>> samples;
  samples.reserve(v.ratios.size());
  for (std::size_t i = 0; i < v.ratios.size(); ++i) {
    if (v.ratios[i] > v.K_hat) {
      v.K_hat = v.ratios[i];
      v.witness_m = i + 1;
    }
    samples.emplace_back(double(i + 1), v.ratios[i]);
  }
  if (cls == SeqClass::CQMS && v.K_hat > kAlphaCap) v.K_hat = kInf;

  v.growth_slope = top_decades_slope(samples, double(horizon));
  bool grows = v.growth_slope && *v.growth_slope >= kSlopeCap;
  v.member = std::isfinite(v.K_hat) && !grows;
  return v;
}

InclusionReport verify_inclusions(const SequenceRule& seq, std::uint64_t horizon) {
  require_real(seq, "verify_inclusions");
  InclusionReport r;
  constexpr SeqClass order[5] = {SeqClass::MS, SeqClass::CQMS, SeqClass::RBVS, SeqClass::GBVS,
                                 SeqClass::NBVS};
  for (int i = 0; i < 5; ++i) r.verdicts[i] = check_class(seq, order[i], horizon);
  const auto& [ms, cqms, rbvs, gbvs, nbvs] = r.verdicts;

  auto flag = [&](const char* msg) { r.violations.emplace_back(msg); };
  if (ms.member && !(rbvs.member && cqms.member))
    flag("checker inconsistency: ms member but rbvs or cqms non-member");
  if ((rbvs.member || cqms.member) && !gbvs.member)
    flag("checker inconsistency: rbvs or cqms member but gbvs non-member");
  if (gbvs.member && !nbvs.member)
    flag("checker inconsistency: gbvs member but nbvs non-member");
  r.consistent = r.violations.empty();
  return r;
}

}  // namespace seqclass
