#include "seqclass/trig_eval.hpp"

#include <algorithm>
#include <cmath>

#include "seqclass/error.hpp"
#include "seqclass/parallel.hpp"
#include "seqclass/summation.hpp"

namespace seqclass {

namespace {

// Head/tail of k*x: hi carries the rounded product, lo the exact residue.
inline void split_arg(double k, double x, double& hi, double& lo) noexcept {
  hi = k * x;
  lo = std::fma(k, x, -hi);
}

void require_x_in(double x, double a, double b, const char* who) {
  if (!(x >= a && x <= b))
    throw Error(Errc::domain, std::string(who) + ": x outside its domain");
}

}  // namespace

double sin_prod(double k, double x) noexcept {
  double hi, lo;
  split_arg(k, x, hi, lo);
  return std::sin(hi) + lo * std::cos(hi);
}

double cos_prod(double k, double x) noexcept {
  double hi, lo;
  split_arg(k, x, hi, lo);
  return std::cos(hi) - lo * std::sin(hi);
}

std::complex<double> unit_phase(double k, double x) noexcept {
  double hi, lo;
  split_arg(k, x, hi, lo);
  double c = std::cos(hi), s = std::sin(hi);
  return {c - lo * s, s + lo * c};
}

std::complex<double> partial_sum(const TwoSidedSeq& seq, std::uint64_t n, double x) {
  ComplexSum acc;
  acc.add(seq.coefficient(0));
  for (std::uint64_t k = 1; k <= n; ++k) {
    auto e = unit_phase(double(k), x);
    acc.add(seq.coefficient(std::int64_t(k)) * e);
    acc.add(seq.coefficient(-std::int64_t(k)) * std::conj(e));
  }
  return acc.value();
}

double sine_partial(const SequenceRule& b, std::uint64_t n, double x) {
  if (!b.is_real()) throw Error(Errc::domain, "sine_partial requires a real-valued rule");
  if (n < 1) throw Error(Errc::domain, "sine_partial needs n >= 1");
  Compensated acc;
  for (std::uint64_t k = 1; k <= n; ++k) acc.add(b.eval(k).real() * sin_prod(double(k), x));
  return acc.value();
}

double sin_sum(std::uint64_t n, double x) {
  require_x_in(x, 0.0, kPi, "sin_sum");
  if (x == 0.0 || n == 0) return 0.0;
  double v;
  if (x < kTinyX) {
    v = 0.5 * x * double(n) * double(n + 1);
  } else {
    v = sin_prod(0.5 * double(n), x) * sin_prod(0.5 * double(n + 1), x) / std::sin(0.5 * x);
  }
  double cap = kPi / x;
  if (std::abs(v) > cap) v = std::copysign(cap, v);
  return v;
}

double dirichlet(std::uint64_t k, double x) {
  if (std::abs(x) < kTinyX) return double(k) + 0.5;
  return sin_prod(double(k) + 0.5, x) / (2.0 * std::sin(0.5 * x));
}

double dirichlet_star(std::uint64_t k, double x, std::uint64_t n_threshold) {
  if (n_threshold < 1) throw Error(Errc::domain, "dirichlet_star needs n_threshold >= 1");
  require_x_in(std::abs(x), 0.0, kPi, "dirichlet_star");
  double ax = std::abs(x);
  if (ax >= 1.0 / double(n_threshold))
    return -cos_prod(double(k) + 0.5, x) / (2.0 * std::sin(0.5 * x));
  if (ax < kTinyX) return 0.5 * x * double(k) * double(k + 1);
  return sin_prod(0.5 * double(k + 1), x) * sin_prod(0.5 * double(k), x) / std::sin(0.5 * x);
}

std::complex<double> complex_kernel(std::uint64_t k, double x, std::uint64_t n_threshold) {
  return {dirichlet(k, x), dirichlet_star(k, x, n_threshold)};
}

std::complex<double> delayed_mean(const TwoSidedSeq& seq, std::uint64_t n, double x) {
  if (n < 1) throw Error(Errc::domain, "delayed_mean needs n >= 1");
  ComplexSum acc;
  acc.add(partial_sum(seq, n, x));
  for (std::uint64_t j = n + 1; j < 2 * n; ++j) {
    auto e = unit_phase(double(j), x);
    std::complex<double> term = seq.coefficient(std::int64_t(j)) * e +
                                seq.coefficient(-std::int64_t(j)) * std::conj(e);
    acc.add(term * (double(2 * n - j) / double(n)));
  }
  return acc.value();
}

AbelTail abel_tail(const SequenceRule& seq, std::uint64_t N, double x, std::uint64_t horizon) {
  if (N < 1 || horizon < N) throw Error(Errc::domain, "abel_tail needs 1 <= N <= horizon");
  if (!(x > 0.0 && x < kPi)) throw Error(Errc::domain, "abel_tail needs x in (0, pi)");
  double tail_var = seq.tail_variation(double(horizon) + 1.0);
  if (!std::isfinite(tail_var))
    throw Error(Errc::capability, "abel_tail: no finite variation tail for this rule");
  std::complex<double> edge = seq.eval(horizon + 1);
  if (std::abs(edge) > tail_var + 1e-12)
    throw Error(Errc::capability,
                "abel_tail: rule is not certified null beyond the horizon");

  ComplexSum acc;
  std::complex<double> cur = seq.eval(N);
  acc.add(-cur * sin_sum(N - 1, x));
  for (std::uint64_t k = N; k <= horizon; ++k) {
    std::complex<double> nxt = seq.eval(k + 1);
    acc.add((cur - nxt) * sin_sum(k, x));
    cur = nxt;
  }
  return {acc.value(), (kPi / x) * tail_var};
}

NormPair norms(const std::vector<double>& xs, const std::vector<std::complex<double>>& values,
               bool even_double) {
  if (xs.size() != values.size() || xs.size() < 2)
    throw Error(Errc::bad_config, "norms needs matching abscissae/values, at least 2 points");
  NormPair out;
  Compensated l1;
  double prev_x = xs[0];
  double prev_a = std::abs(values[0]);
  out.sup = prev_a;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > prev_x)) throw Error(Errc::bad_config, "norms needs increasing abscissae");
    double a = std::abs(values[i]);
    out.sup = std::max(out.sup, a);
    l1.add((xs[i] - prev_x) * 0.5 * (prev_a + a));
    prev_x = xs[i];
    prev_a = a;
  }
  out.l1 = l1.value() * (even_double ? 2.0 : 1.0);
  return out;
}

std::vector<std::vector<std::complex<double>>> partial_sums_on_grid(
    const TwoSidedSeq& seq, const std::vector<std::uint64_t>& cuts,
    const std::vector<double>& xs) {
  if (cuts.empty()) throw Error(Errc::bad_config, "partial_sums_on_grid needs cuts");
  for (std::size_t j = 1; j < cuts.size(); ++j)
    if (cuts[j] <= cuts[j - 1])
      throw Error(Errc::bad_config, "partial_sums_on_grid cuts must increase");

  std::uint64_t kmax = cuts.back();
  std::vector<std::complex<double>> cpos(kmax + 1), cneg(kmax + 1);
  cpos[0] = seq.coefficient(0);
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    cpos[k] = seq.coefficient(std::int64_t(k));
    cneg[k] = seq.coefficient(-std::int64_t(k));
  }

  std::vector<std::vector<std::complex<double>>> out(cuts.size());
  for (auto& v : out) v.resize(xs.size());
  parallel_for(0, xs.size(), [&](std::size_t i) {
    double x = xs[i];
    ComplexSum acc;
    acc.add(cpos[0]);
    std::size_t ci = 0;
    std::uint64_t k = 0;
    while (true) {
      while (ci < cuts.size() && cuts[ci] == k) out[ci++][i] = acc.value();
      if (ci == cuts.size()) break;
      ++k;
      auto e = unit_phase(double(k), x);
      acc.add(cpos[k] * e);
      acc.add(cneg[k] * std::conj(e));
    }
  });
  return out;
}

std::vector<std::complex<double>> delayed_mean_minus_sn_on_grid(const TwoSidedSeq& seq,
                                                                std::uint64_t n,
                                                                const std::vector<double>& xs) {
  if (n < 1) throw Error(Errc::domain, "delayed_mean_minus_sn_on_grid needs n >= 1");
  std::vector<std::complex<double>> wpos, wneg;
  for (std::uint64_t j = n + 1; j < 2 * n; ++j) {
    double w = double(2 * n - j) / double(n);
    wpos.push_back(seq.coefficient(std::int64_t(j)) * w);
    wneg.push_back(seq.coefficient(-std::int64_t(j)) * w);
  }
  std::vector<std::complex<double>> out(xs.size());
  parallel_for(0, xs.size(), [&](std::size_t i) {
    ComplexSum acc;
    for (std::uint64_t j = n + 1; j < 2 * n; ++j) {
      auto e = unit_phase(double(j), xs[i]);
      acc.add(wpos[j - n - 1] * e);
      acc.add(wneg[j - n - 1] * std::conj(e));
    }
    out[i] = acc.value();
  });
  return out;
}

SeriesEval eval_tail(const TwoSidedSeq& seq, std::uint64_t n, const GridSpec& grid,
                     std::uint64_t n_ref) {
  std::uint64_t ref = n_ref ? n_ref : std::max<std::uint64_t>(16 * n, 4096);
  if (ref <= n) throw Error(Errc::bad_config, "eval_tail reference must exceed n");
  SeriesEval ev;
  ev.xs = grid.realize();
  auto sums = partial_sums_on_grid(seq, {n, ref}, ev.xs);
  ev.values.resize(ev.xs.size());
  for (std::size_t i = 0; i < ev.xs.size(); ++i) ev.values[i] = sums[1][i] - sums[0][i];
  auto np = norms(ev.xs, ev.values);
  ev.sup_norm = np.sup;
  ev.l1_norm = np.l1;
  ev.truncation_sup =
      seq.pos.tail_abs_sum(double(ref) + 1.0) + seq.neg.tail_abs_sum(double(ref) + 1.0);
  ev.truncation_l1 = ev.truncation_sup * (grid.hi() - grid.lo());
  return ev;
}

TwoSidedSeq sine_series(const SequenceRule& b) {
  if (!b.is_real()) throw Error(Errc::domain, "sine_series requires a real-valued rule");
  return {b.scaled({0.0, -0.5}).with_zero_term(0.0), b.scaled({0.0, 0.5})};
}

TwoSidedSeq cosine_series(const SequenceRule& c) {
  std::complex<double> c0 = c.zero_term().value_or(0.0);
  return {c.scaled(0.5).with_zero_term(c0), c.scaled(0.5)};
}

}  // namespace seqclass
