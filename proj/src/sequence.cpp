#include "seqclass/sequence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "seqclass/error.hpp"
#include "seqclass/sector.hpp"
#include "seqclass/summation.hpp"

namespace seqclass {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using cplx = std::complex<double>;

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

namespace detail {

class RuleImpl {
 public:
  virtual ~RuleImpl() = default;
  virtual cplx eval(std::uint64_t n) const = 0;
  virtual std::optional<cplx> zero_term() const { return std::nullopt; }
  virtual bool is_real() const = 0;
  virtual std::string describe() const = 0;
  virtual double tail_variation(double m) const = 0;
  virtual double tail_weighted_sup(double m) const = 0;
  virtual double tail_abs_sum(double m) const = 0;
};

namespace {

class TableRule final : public RuleImpl {
 public:
  TableRule(std::vector<cplx> v, std::optional<cplx> c0) : v_(std::move(v)), c0_(c0) {}

  cplx eval(std::uint64_t n) const override {
    return n >= 1 && n <= v_.size() ? v_[n - 1] : cplx{0.0, 0.0};
  }
  std::optional<cplx> zero_term() const override { return c0_; }
  bool is_real() const override {
    if (c0_ && c0_->imag() != 0.0) return false;
    return std::all_of(v_.begin(), v_.end(), [](cplx z) { return z.imag() == 0.0; });
  }
  std::string describe() const override {
    return v_.empty() && !c0_ ? "zero" : "table[" + std::to_string(v_.size()) + "]";
  }

  double tail_variation(double m) const override {
    if (m > static_cast<double>(v_.size())) return 0.0;
    auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
    Compensated s;
    for (std::uint64_t k = lo; k <= v_.size(); ++k) s.add(std::abs(eval(k) - eval(k + 1)));
    return s.value();
  }
  double tail_weighted_sup(double m) const override {
    if (m > static_cast<double>(v_.size())) return 0.0;
    auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
    double best = 0.0;
    for (std::uint64_t k = lo; k <= v_.size(); ++k)
      best = std::max(best, static_cast<double>(k) * std::abs(v_[k - 1]));
    return best;
  }
  double tail_abs_sum(double m) const override {
    if (m > static_cast<double>(v_.size())) return 0.0;
    auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
    Compensated s;
    for (std::uint64_t k = lo; k <= v_.size(); ++k) s.add(std::abs(v_[k - 1]));
    return s.value();
  }

 private:
  std::vector<cplx> v_;
  std::optional<cplx> c0_;
};

class PowerRule final : public RuleImpl {
 public:
  explicit PowerRule(double p) : p_(p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(Errc::bad_rule_spec, "power: p must be positive");
  }
  cplx eval(std::uint64_t n) const override { return {std::pow(static_cast<double>(n), -p_), 0.0}; }
  bool is_real() const override { return true; }
  std::string describe() const override { return "power:p=" + fmt_num(p_); }

  double tail_variation(double m) const override {
    return std::isinf(m) ? 0.0 : std::pow(m, -p_);
  }
  double tail_weighted_sup(double m) const override {
    if (p_ < 1.0) return kInf;
    if (p_ == 1.0) return 1.0;
    return std::isinf(m) ? 0.0 : std::pow(m, 1.0 - p_);
  }
  double tail_abs_sum(double m) const override {
    if (p_ <= 1.0) return kInf;
    if (std::isinf(m)) return 0.0;
    return std::pow(m, -p_) + std::pow(m, 1.0 - p_) / (p_ - 1.0);
  }

 private:
  double p_;
};

class GeometricRule final : public RuleImpl {
 public:
  explicit GeometricRule(double r) : r_(r) {
    if (!(r > 0.0 && r < 1.0)) throw Error(Errc::bad_rule_spec, "geometric: need 0 < r < 1");
  }
  cplx eval(std::uint64_t n) const override { return {std::pow(r_, static_cast<double>(n)), 0.0}; }
  bool is_real() const override { return true; }
  std::string describe() const override { return "geometric:r=" + fmt_num(r_); }

  double tail_variation(double m) const override {
    return std::isinf(m) ? 0.0 : std::pow(r_, m);
  }
  double tail_weighted_sup(double m) const override {
    if (std::isinf(m)) return 0.0;
    // k*r^k decreases past 1/log(1/r); scan the prefix before that point.
    double turn = 1.0 / std::log(1.0 / r_);
    if (m >= turn) return m * std::pow(r_, m);
    double best = 0.0;
    auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
    auto hi = static_cast<std::uint64_t>(std::ceil(turn)) + 1;
    for (std::uint64_t k = lo; k <= hi; ++k)
      best = std::max(best, static_cast<double>(k) * std::pow(r_, static_cast<double>(k)));
    return best;
  }
  double tail_abs_sum(double m) const override {
    return std::isinf(m) ? 0.0 : std::pow(r_, m) / (1.0 - r_);
  }

 private:
  double r_;
};

// Index from which x^(-a) * log(x+1)^(-b) is nonincreasing, or nullopt when
// it never is (a == 0 with b < 0). The defining condition for b < 0 is
// a*(x+1)*log(x+1) >= |b|*x, whose left side over x is increasing.
std::optional<double> mono_from(double a, double b) {
  if (b >= 0.0) return a >= 0.0 ? std::optional<double>(1.0) : std::nullopt;
  if (a <= 0.0) return std::nullopt;
  double x = 1.0;
  for (int i = 0; i < 2048; ++i) {
    if (a * (x + 1.0) * std::log1p(x) >= -b * x) return x;
    x *= 2.0;
    if (x > 0x1p60) break;
  }
  return std::nullopt;
}

class LogPowerRule final : public RuleImpl {
 public:
  LogPowerRule(double a, double b) : a_(a), b_(b) {
    if (!(a >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
      throw Error(Errc::bad_rule_spec, "logpower: need a >= 0 and finite b");
  }

  cplx eval(std::uint64_t n) const override { return {term(static_cast<double>(n)), 0.0}; }
  bool is_real() const override { return true; }
  std::string describe() const override {
    return "logpower:a=" + fmt_num(a_) + ",b=" + fmt_num(b_);
  }

  double tail_variation(double m) const override {
    auto n0 = mono_from(a_, b_);
    if (!n0) return kInf;
    if (std::isinf(m)) return 0.0;
    double lim = limit_value();
    if (m >= *n0) return term(m) - lim;
    Compensated s;
    auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
    auto mono = static_cast<std::uint64_t>(*n0);
    for (std::uint64_t k = lo; k < mono; ++k)
      s.add(std::abs(term(static_cast<double>(k)) - term(static_cast<double>(k + 1))));
    s.add(term(static_cast<double>(mono)) - lim);
    return s.value();
  }

  double tail_weighted_sup(double m) const override {
    // k*c_k = k^(1-a) * log(k+1)^(-b)
    if (a_ < 1.0) return kInf;
    if (a_ == 1.0) {
      if (b_ < 0.0) return kInf;
      if (b_ == 0.0) return 1.0;
      return std::isinf(m) ? 0.0 : std::pow(std::log1p(m), -b_);
    }
    if (std::isinf(m)) return 0.0;
    auto n1 = mono_from(a_ - 1.0, b_);
    if (!n1) return kInf;
    if (m >= *n1) return m * term(m);
    double best = 0.0;
    auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
    auto mono = static_cast<std::uint64_t>(*n1);
    for (std::uint64_t k = lo; k <= mono; ++k) {
      double kk = static_cast<double>(k);
      best = std::max(best, kk * term(kk));
    }
    return best;
  }

  double tail_abs_sum(double m) const override {
    bool converges = a_ > 1.0 || (a_ == 1.0 && b_ > 1.0);
    if (!converges) return kInf;
    if (std::isinf(m)) return 0.0;
    auto n0 = mono_from(a_, b_);
    if (!n0) return kInf;
    auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)));
    auto K = static_cast<std::uint64_t>(std::ceil(std::max({m, *n0, 2.0})));
    Compensated s;
    for (std::uint64_t k = lo; k < K; ++k) s.add(term(static_cast<double>(k)));
    s.add(term(static_cast<double>(K)));
    s.add(integral_bound(static_cast<double>(K)));
    return s.value();
  }

 private:
  double term(double x) const { return std::pow(x, -a_) * std::pow(std::log1p(x), -b_); }
  double limit_value() const {
    if (a_ > 0.0 || (a_ == 0.0 && b_ > 0.0)) return 0.0;
    if (a_ == 0.0 && b_ == 0.0) return 1.0;
    return kInf;
  }
  // Upper bound for the integral of the term over [M, inf), convergent cases.
  double integral_bound(double M) const {
    if (a_ > 1.0) {
      if (b_ >= 0.0) return std::pow(std::log1p(M), -b_) * std::pow(M, 1.0 - a_) / (a_ - 1.0);
      // log(x+1)^|b| <= s^(-|b|) * (2x)^(s|b|) with s|b| = (a-1)/2, from
      // log(u) <= u^s / s.
      double q = -b_;
      double s = (a_ - 1.0) / (2.0 * q);
      double c = std::pow(s, -q) * std::pow(2.0, (a_ - 1.0) / 2.0);
      return c * std::pow(M, -(a_ - 1.0) / 2.0) * 2.0 / (a_ - 1.0);
    }
    // a == 1, b > 1
    return std::pow(std::log(M), 1.0 - b_) / (b_ - 1.0);
  }

  double a_, b_;
};

class DyadicBlockRule final : public RuleImpl {
 public:
  cplx eval(std::uint64_t n) const override { return {value(n), 0.0}; }
  bool is_real() const override { return true; }
  std::string describe() const override { return "dyadicblock"; }

  double tail_variation(double m) const override {
    if (std::isinf(m)) return 0.0;
    Compensated s;
    if (m <= 1.0) s.add(1.0 - value(2));
    int j0 = block_of(std::max(m, 2.0));
    for (int j = j0; j < 64; ++j) s.add(std::abs(block_value(j) - block_value(j + 1)));
    return s.value();
  }
  double tail_weighted_sup(double m) const override {
    if (std::isinf(m)) return 0.0;
    double best = 0.0;
    if (m <= 1.0) best = 1.0;
    int j0 = block_of(std::max(m, 2.0));
    // Within a block k*c_k peaks at the block's last index.
    double first_block_end = std::exp2(j0 + 1) - 1.0;
    best = std::max(best, first_block_end * block_value(j0));
    for (int j = j0 + 1; j < 64; ++j)
      best = std::max(best, (std::exp2(j + 1) - 1.0) * block_value(j));
    return best;
  }
  double tail_abs_sum(double m) const override {
    if (std::isinf(m)) return 0.0;
    Compensated s;
    double mm = m;
    if (mm <= 1.0) {
      s.add(1.0);
      mm = 2.0;
    }
    int j0 = block_of(mm);
    s.add((std::exp2(j0 + 1) - std::ceil(mm)) * block_value(j0));
    for (int j = j0 + 1; j < 64; ++j) s.add(std::exp2(j) * block_value(j));
    return s.value();
  }

 private:
  static int block_of(double x) {
    return static_cast<int>(std::floor(std::log2(x) * (1.0 + 1e-15)));
  }
  static double block_value(int j) { return (j % 2 == 0) ? std::exp2(-2 * j) : std::exp2(-3 * j); }
  static double value(std::uint64_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return 1.0;
    int j = std::bit_width(n) - 1;
    return block_value(j);
  }
};

class ScaledRule final : public RuleImpl {
 public:
  ScaledRule(cplx f, std::shared_ptr<const RuleImpl> in) : f_(f), in_(std::move(in)) {}
  cplx eval(std::uint64_t n) const override { return f_ * in_->eval(n); }
  std::optional<cplx> zero_term() const override {
    auto z = in_->zero_term();
    return z ? std::optional<cplx>(f_ * *z) : std::nullopt;
  }
  bool is_real() const override { return f_.imag() == 0.0 && in_->is_real(); }
  std::string describe() const override {
    return "scale(" + fmt_num(f_.real()) + "," + fmt_num(f_.imag()) + ")*" + in_->describe();
  }
  double tail_variation(double m) const override { return std::abs(f_) * in_->tail_variation(m); }
  double tail_weighted_sup(double m) const override {
    return std::abs(f_) * in_->tail_weighted_sup(m);
  }
  double tail_abs_sum(double m) const override { return std::abs(f_) * in_->tail_abs_sum(m); }

 private:
  cplx f_;
  std::shared_ptr<const RuleImpl> in_;
};

class SumRule final : public RuleImpl {
 public:
  SumRule(std::shared_ptr<const RuleImpl> a, std::shared_ptr<const RuleImpl> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  cplx eval(std::uint64_t n) const override { return a_->eval(n) + b_->eval(n); }
  std::optional<cplx> zero_term() const override {
    auto za = a_->zero_term(), zb = b_->zero_term();
    if (!za && !zb) return std::nullopt;
    return za.value_or(cplx{}) + zb.value_or(cplx{});
  }
  bool is_real() const override { return a_->is_real() && b_->is_real(); }
  std::string describe() const override {
    return "(" + a_->describe() + " + " + b_->describe() + ")";
  }
  double tail_variation(double m) const override {
    return a_->tail_variation(m) + b_->tail_variation(m);
  }
  double tail_weighted_sup(double m) const override {
    return a_->tail_weighted_sup(m) + b_->tail_weighted_sup(m);
  }
  double tail_abs_sum(double m) const override {
    return a_->tail_abs_sum(m) + b_->tail_abs_sum(m);
  }

 private:
  std::shared_ptr<const RuleImpl> a_, b_;
};

class WithZeroRule final : public RuleImpl {
 public:
  WithZeroRule(cplx c0, std::shared_ptr<const RuleImpl> in) : c0_(c0), in_(std::move(in)) {}
  cplx eval(std::uint64_t n) const override { return in_->eval(n); }
  std::optional<cplx> zero_term() const override { return c0_; }
  bool is_real() const override { return c0_.imag() == 0.0 && in_->is_real(); }
  std::string describe() const override {
    return "withzero(" + fmt_num(c0_.real()) + "," + fmt_num(c0_.imag()) + ")*" + in_->describe();
  }
  double tail_variation(double m) const override { return in_->tail_variation(m); }
  double tail_weighted_sup(double m) const override { return in_->tail_weighted_sup(m); }
  double tail_abs_sum(double m) const override { return in_->tail_abs_sum(m); }

 private:
  cplx c0_;
  std::shared_ptr<const RuleImpl> in_;
};

}  // namespace
}  // namespace detail

SequenceRule::SequenceRule(std::shared_ptr<const detail::RuleImpl> impl) : impl_(std::move(impl)) {}

SequenceRule SequenceRule::table(std::vector<cplx> values, std::optional<cplx> c0) {
  return SequenceRule(std::make_shared<detail::TableRule>(std::move(values), c0));
}
SequenceRule SequenceRule::zero() { return table({}); }
SequenceRule SequenceRule::power(double p) {
  return SequenceRule(std::make_shared<detail::PowerRule>(p));
}
SequenceRule SequenceRule::log_power(double a, double b) {
  return SequenceRule(std::make_shared<detail::LogPowerRule>(a, b));
}
SequenceRule SequenceRule::geometric(double r) {
  return SequenceRule(std::make_shared<detail::GeometricRule>(r));
}
SequenceRule SequenceRule::dyadic_block() {
  return SequenceRule(std::make_shared<detail::DyadicBlockRule>());
}
SequenceRule SequenceRule::scaled(cplx factor) const {
  return SequenceRule(std::make_shared<detail::ScaledRule>(factor, impl_));
}
SequenceRule SequenceRule::plus(const SequenceRule& other) const {
  return SequenceRule(std::make_shared<detail::SumRule>(impl_, other.impl_));
}
SequenceRule SequenceRule::with_zero_term(cplx c0) const {
  return SequenceRule(std::make_shared<detail::WithZeroRule>(c0, impl_));
}

cplx SequenceRule::eval(std::uint64_t n) const {
  if (n == 0) {
    auto z = impl_->zero_term();
    if (!z) throw Error(Errc::domain, "index 0 on a rule without a defined c_0");
    return *z;
  }
  return impl_->eval(n);
}
std::optional<cplx> SequenceRule::zero_term() const { return impl_->zero_term(); }
cplx SequenceRule::delta(std::uint64_t n) const {
  if (n == 0) throw Error(Errc::domain, "delta requires n >= 1");
  return impl_->eval(n) - impl_->eval(n + 1);
}
bool SequenceRule::is_real() const { return impl_->is_real(); }
std::string SequenceRule::describe() const { return impl_->describe(); }
double SequenceRule::tail_variation(double m) const { return impl_->tail_variation(m); }
double SequenceRule::tail_weighted_sup(double m) const { return impl_->tail_weighted_sup(m); }
double SequenceRule::tail_abs_sum(double m) const { return impl_->tail_abs_sum(m); }

double block_variation(const SequenceRule& seq, std::uint64_t m, std::uint64_t M) {
  if (m < 1 || M < m) throw Error(Errc::domain, "block_variation requires 1 <= m <= M");
  Compensated s;
  for (std::uint64_t k = m; k <= M; ++k) s.add(std::abs(seq.delta(k)));
  return s.value();
}

namespace {

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::bad_rule_spec, "bad numeric parameter '" + s + "'");
  }
}

// "a=1,b=2" -> ordered key/value pairs
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::bad_rule_spec, "expected key=value, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

SequenceRule load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open table file '" + path + "'");
  std::vector<cplx> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error(Errc::bad_rule_spec,
                  path + ":" + std::to_string(lineno) + ": expected 're,im'");
    values.emplace_back(parse_double(line.substr(0, comma)), parse_double(line.substr(comma + 1)));
  }
  return SequenceRule::table(std::move(values));
}

}  // namespace

SequenceRule parse_rule(const std::string& spec) {
  if (spec == "zero") return SequenceRule::zero();
  if (spec == "dyadicblock") return SequenceRule::dyadic_block();
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw Error(Errc::bad_rule_spec, "unknown rule '" + spec + "'");
  std::string head = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (head == "table") {
    if (rest.size() < 2 || rest[0] != '@')
      throw Error(Errc::bad_rule_spec, "table rule expects table:@file.csv");
    return load_table_csv(rest.substr(1));
  }
  auto kv = parse_kv(rest);
  auto get = [&](const std::string& key) -> double {
    for (auto& [k, v] : kv)
      if (k == key) return parse_double(v);
    throw Error(Errc::bad_rule_spec, "rule '" + head + "' missing parameter '" + key + "'");
  };
  if (head == "power") return SequenceRule::power(get("p"));
  if (head == "logpower") return SequenceRule::log_power(get("a"), get("b"));
  if (head == "geometric") return SequenceRule::geometric(get("r"));
  throw Error(Errc::bad_rule_spec, "unknown rule '" + head + "'");
}

cplx TwoSidedSeq::coefficient(std::int64_t k) const {
  if (k > 0) return pos.eval(static_cast<std::uint64_t>(k));
  if (k < 0) return neg.eval(static_cast<std::uint64_t>(-k));
  return pos.zero_term().value_or(cplx{});
}
cplx TwoSidedSeq::symmetric_sum(std::uint64_t n) const {
  return pos.eval(n) + neg.eval(n);
}
std::string TwoSidedSeq::describe() const {
  return "pos=" + pos.describe() + ";neg=" + neg.describe();
}

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::bad_rule_spec: return "bad_rule_spec";
    case Errc::domain: return "domain_error";
    case Errc::capability: return "capability_error";
    case Errc::bad_config: return "bad_config";
    case Errc::io: return "io_error";
  }
  return "unknown";
}

SectorAngle::SectorAngle(double theta0) : theta0_(theta0) {
  if (!(theta0 >= 0.0) || !(theta0 < 1.5707963267948966))
    throw Error(Errc::domain, "sector half-angle must lie in [0, pi/2)");
}
double SectorAngle::constant() const noexcept { return 1.0 / std::cos(theta0_); }

bool in_sector(cplx z, const SectorAngle& sector) noexcept {
  if (z == cplx{}) return true;
  return std::abs(std::arg(z)) <= sector.theta() + 1e-12;
}

}  // namespace seqclass
