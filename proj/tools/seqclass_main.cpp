#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqclass/approx.hpp"
#include "seqclass/class_check.hpp"
#include "seqclass/convergence.hpp"
#include "seqclass/error.hpp"
#include "seqclass/fitting.hpp"
#include "seqclass/grid.hpp"
#include "seqclass/report.hpp"
#include "seqclass/sequence.hpp"
#include "seqclass/trig_eval.hpp"

namespace sq = seqclass;
using sq::ordered_json;

namespace {

constexpr double kResidualTol = 1e-12;

struct Opts {
  std::string rule;
  std::string pos;
  std::string neg = "zero";
  std::string psi;
  std::string cls;
  std::uint64_t horizon = 0;  // 0 = per-command default
  std::uint64_t N0 = 1;
  std::uint64_t nmax = 128;
  std::vector<std::uint64_t> n_list;
  std::uint64_t n = 64;
  std::uint64_t kmax = 64;
  std::string kernel_check = "all";
  std::size_t grid_points = 0;  // 0 = domain default
  std::string json_path;
  std::string csv_path;
  double threshold_c = 20.0;
  double threshold_slope = 0.1;
};

std::uint64_t pick(std::uint64_t value, std::uint64_t fallback) {
  return value ? value : fallback;
}

// Explicit --nlist wins; otherwise powers of two 4..nmax.
std::vector<std::uint64_t> resolve_n_list(const Opts& o) {
  std::vector<std::uint64_t> ns = o.n_list;
  if (ns.empty())
    for (std::uint64_t n = 4; n <= o.nmax; n *= 2) ns.push_back(n);
  if (ns.empty()) throw sq::Error(sq::Errc::bad_config, "the n list is empty");
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] < 1 || (i && ns[i] <= ns[i - 1]))
      throw sq::Error(sq::Errc::bad_config, "the n list must be strictly increasing, from 1 up");
  return ns;
}

sq::GridSpec resolve_grid(const Opts& o, sq::Domain domain) {
  sq::GridSpec g = domain == sq::Domain::zero_pi ? sq::GridSpec::half() : sq::GridSpec::full();
  if (o.grid_points) g.base_points = o.grid_points;
  return g;
}

sq::TwoSidedSeq parse_two_sided(const Opts& o) {
  if (o.pos.empty() && o.rule.empty())
    throw sq::Error(sq::Errc::bad_config, "needs --pos (or --rule)");
  return {sq::parse_rule(o.pos.empty() ? o.rule : o.pos), sq::parse_rule(o.neg)};
}

void emit(const std::string& command, ordered_json config, ordered_json result,
          const std::string& json_path) {
  ordered_json envelope;
  envelope["version"] = sq::kVersion;
  config["command"] = command;  // ordered last so flag echo leads
  envelope["config"] = std::move(config);
  envelope["result"] = std::move(result);
  std::string text = envelope.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!json_path.empty()) sq::write_json_atomic(json_path, envelope);
}

bool flat_enough(const sq::TrendFit& fit, double cap) {
  return !fit.slope || std::abs(*fit.slope) < cap;
}

int run_check(const Opts& o) {
  auto cls = sq::class_from_name(o.cls);
  if (!cls) throw sq::Error(sq::Errc::bad_config, "unknown class name: " + o.cls);
  sq::SequenceRule rule = sq::parse_rule(o.rule);
  sq::ClassVerdict v =
      sq::check_class(rule, *cls, pick(o.horizon, 65536), o.N0);
  ordered_json result = sq::to_json(v);
  if (!o.csv_path.empty()) {
    sq::write_csv_atomic(o.csv_path, sq::to_csv(v));
    result["ratios"] = o.csv_path;
  }
  ordered_json config{{"rule", o.rule}, {"class", o.cls},
                      {"horizon", pick(o.horizon, 65536)}, {"N0", o.N0}};
  emit("check", std::move(config), std::move(result), o.json_path);
  return v.member ? 0 : 2;
}

int run_verify_inclusions(const Opts& o) {
  sq::SequenceRule rule = sq::parse_rule(o.rule);
  std::uint64_t horizon = pick(o.horizon, 65536);
  sq::InclusionReport r = sq::verify_inclusions(rule, horizon);
  ordered_json config{{"rule", o.rule}, {"horizon", horizon}};
  emit("verify-inclusions", std::move(config), sq::to_json(r), o.json_path);
  return r.consistent ? 0 : 2;
}

int run_counterexample(const Opts& o) {
  std::uint64_t horizon = pick(o.horizon, 65536);
  sq::SequenceRule c = sq::SequenceRule::dyadic_block();
  sq::ClassVerdict nb = sq::check_class(c, sq::SeqClass::NBVS, horizon);
  sq::ClassVerdict gb = sq::check_class(c, sq::SeqClass::GBVS, horizon, o.N0);
  bool confirmed = nb.member && !gb.member;
  ordered_json result{{"sequence", c.describe()},
                      {"nbvs", sq::to_json(nb)},
                      {"gbvs", sq::to_json(gb)},
                      {"pattern_confirmed", confirmed}};
  if (!o.csv_path.empty()) {
    sq::Csv csv{{"m", "nbvs_ratio", "gbvs_ratio"}, {}};
    for (std::size_t i = 0; i < nb.ratios.size(); ++i)
      csv.rows.push_back({sq::csv_cell(std::uint64_t(i + 1)), sq::csv_cell(nb.ratios[i]),
                          sq::csv_cell(gb.ratios[i])});
    sq::write_csv_atomic(o.csv_path, csv);
    result["ratios"] = o.csv_path;
  }
  ordered_json config{{"horizon", horizon}, {"N0", o.N0}};
  emit("counterexample", std::move(config), std::move(result), o.json_path);
  return confirmed ? 0 : 2;
}

int run_uniform(const Opts& o) {
  sq::TwoSidedSeq f = parse_two_sided(o);
  std::uint64_t horizon = pick(o.horizon, 65536);
  auto ns = resolve_n_list(o);
  sq::CriterionReport rep = sq::criterion_uniform(f, horizon);
  sq::DecayTable decay =
      sq::uniform_decay_experiment(f, ns, resolve_grid(o, sq::Domain::minus_pi_pi));
  if (!o.csv_path.empty()) sq::write_csv_atomic(o.csv_path, sq::to_csv(decay));
  ordered_json config{{"pos", o.pos.empty() ? o.rule : o.pos}, {"neg", o.neg},
                      {"horizon", horizon}, {"n_list", ns}};
  emit("uniform", std::move(config),
       ordered_json{{"criterion", sq::to_json(rep)}, {"decay", sq::to_json(decay)}},
       o.json_path);
  return rep.verdict == sq::Verdict::violated ? 2 : 0;
}

int run_sine(const Opts& o) {
  sq::SequenceRule b = sq::parse_rule(o.rule);
  std::uint64_t horizon = pick(o.horizon, 65536);
  sq::CriterionReport rep = sq::criterion_sine_T3(b, horizon);
  if (!o.csv_path.empty()) sq::write_csv_atomic(o.csv_path, sq::to_csv(rep));
  ordered_json config{{"rule", o.rule}, {"horizon", horizon}};
  emit("sine", std::move(config), sq::to_json(rep), o.json_path);
  return rep.verdict == sq::Verdict::violated ? 2 : 0;
}

int run_l1(const Opts& o) {
  sq::TwoSidedSeq f = parse_two_sided(o);
  std::uint64_t horizon = pick(o.horizon, 65536);
  auto ns = resolve_n_list(o);
  sq::GridSpec grid = resolve_grid(o, sq::Domain::minus_pi_pi);
  sq::CriterionReport rep = sq::criterion_L1_T5(f, horizon);
  sq::L1Table table = sq::l1_decay_experiment(f, ns, grid);
  ordered_json result{{"criterion", sq::to_json(rep)}, {"l1", sq::to_json(table)}};
  bool rate_ok = true;
  if (!o.psi.empty()) {
    sq::RateSpec spec = sq::make_rate_spec(sq::parse_rule(o.psi), ns.back());
    sq::RateReport rr = sq::rate_match_T6(f, spec, ns, grid);
    result["rate"] = sq::to_json(rr);
    rate_ok = rr.consistent;
  }
  if (!o.csv_path.empty()) sq::write_csv_atomic(o.csv_path, sq::to_csv(table));
  ordered_json config{{"pos", o.pos.empty() ? o.rule : o.pos}, {"neg", o.neg},
                      {"psi", o.psi}, {"horizon", horizon}, {"n_list", ns}};
  emit("l1", std::move(config), std::move(result), o.json_path);
  bool ok = rep.verdict != sq::Verdict::violated && table.lower_ok &&
            !table.tau_fit.grows() && rate_ok;
  return ok ? 0 : 2;
}

int run_rate(const Opts& o) {
  sq::TwoSidedSeq f = parse_two_sided(o);
  auto ns = resolve_n_list(o);
  sq::RateSpec spec = sq::make_rate_spec(sq::parse_rule(o.psi), ns.back());
  sq::RateReport r =
      sq::rate_match_T6(f, spec, ns, resolve_grid(o, sq::Domain::minus_pi_pi));
  if (!o.csv_path.empty()) sq::write_csv_atomic(o.csv_path, sq::to_csv(r));
  ordered_json config{{"pos", o.pos.empty() ? o.rule : o.pos}, {"neg", o.neg},
                      {"psi", o.psi}, {"n_list", ns}};
  emit("rate", std::move(config), sq::to_json(r), o.json_path);
  return r.consistent ? 0 : 2;
}

int run_approx(const Opts& o) {
  sq::TwoSidedSeq f = parse_two_sided(o);
  auto ns = resolve_n_list(o);
  std::uint64_t horizon = pick(o.horizon, std::max<std::uint64_t>(4096, 2 * ns.back() + 1));
  auto brackets =
      sq::en_bracket_sweep(f, ns, resolve_grid(o, sq::Domain::minus_pi_pi), horizon);

  // Equivalence window: every ratio r needs 1/C <= r <= C with a flat trend.
  double window_C = 0.0;
  std::vector<std::pair<double, double>> s_qu, s_lq;
  for (const auto& b : brackets) {
    for (double r : {b.q_over_upper, b.lower_over_q})
      window_C = std::max(window_C, std::max(r, r > 0 ? 1.0 / r : INFINITY));
    s_qu.emplace_back(double(b.n), b.q_over_upper);
    s_lq.emplace_back(double(b.n), b.lower_over_q);
  }
  sq::TrendFit fit_qu = sq::fit_trend(s_qu), fit_lq = sq::fit_trend(s_lq);
  bool pass = window_C <= o.threshold_c && flat_enough(fit_qu, o.threshold_slope) &&
              flat_enough(fit_lq, o.threshold_slope);

  ordered_json rows = ordered_json::array();
  for (const auto& b : brackets) rows.push_back(sq::to_json(b));
  ordered_json result{{"brackets", rows},
                      {"window_C", sq::num(window_C)},
                      {"q_over_upper_fit", sq::to_json(fit_qu)},
                      {"lower_over_q_fit", sq::to_json(fit_lq)},
                      {"pass", pass}};
  if (!o.csv_path.empty()) sq::write_csv_atomic(o.csv_path, sq::to_csv(brackets));
  ordered_json config{{"pos", o.pos.empty() ? o.rule : o.pos}, {"neg", o.neg},
                      {"horizon", horizon}, {"n_list", ns},
                      {"threshold_c", sq::num(o.threshold_c)},
                      {"threshold_slope", sq::num(o.threshold_slope)}};
  emit("approx", std::move(config), std::move(result), o.json_path);
  return pass ? 0 : 2;
}

// Difference identity: with a shared branch threshold the k and k-1 kernels
// switch branches together, so E_k - E_{k-1} = e^{ikx} everywhere. With each
// kernel on its own natural threshold the identity holds except on the
// mixed-branch sliver 1/k <= |x| < 1/(k-1), which the sweep skips.
double identity15_residual(std::uint64_t k, const std::vector<double>& xs) {
  double worst = 0.0;
  std::uint64_t nk = std::max<std::uint64_t>(k, 1);
  std::uint64_t nk1 = std::max<std::uint64_t>(k - 1, 1);
  double lo = 1.0 / double(k);
  double hi = k > 1 ? 1.0 / double(k - 1) : 0.0;
  for (double x : xs)
    for (double s : {1.0, -1.0}) {
      double ax = std::abs(s * x);
      if (k > 1 && ax >= lo && ax < hi) continue;
      std::complex<double> r = sq::complex_kernel(k, s * x, nk) -
                               sq::complex_kernel(k - 1, s * x, nk1) -
                               sq::unit_phase(double(k), s * x);
      worst = std::max(worst, std::abs(r));
    }
  return worst;
}

double identity16_residual(std::uint64_t k, const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) {
    std::complex<double> r = sq::complex_kernel(k, x, k) + sq::complex_kernel(k, -x, k) -
                             2.0 * sq::dirichlet(k, x);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

int run_kernels(const Opts& o) {
  if (o.kmax < 2) throw sq::Error(sq::Errc::bad_config, "kernels needs --kmax >= 2");
  bool do_id = o.kernel_check != "norms";
  bool do_norms = o.kernel_check != "identities";
  auto xs = resolve_grid(o, sq::Domain::zero_pi).realize();

  ordered_json result;
  bool pass = true;
  if (do_id) {
    double worst15 = 0.0, worst16 = 0.0;
    for (std::uint64_t k = 1; k <= o.kmax; ++k) {
      worst15 = std::max(worst15, identity15_residual(k, xs));
      worst16 = std::max(worst16, identity16_residual(k, xs));
    }
    bool ok = worst15 < kResidualTol && worst16 < kResidualTol;
    result["identities"] =
        ordered_json{{"kmax", o.kmax},
                     {"difference_residual", sq::num(worst15)},
                     {"reflection_residual", sq::num(worst16)},
                     {"tolerance", sq::num(kResidualTol)},
                     {"pass", ok}};
    pass = pass && ok;
  }
  if (do_norms) {
    std::vector<sq::RatioRow> rows;
    for (std::uint64_t k = 4; k <= o.kmax; k *= 2) {
      std::vector<std::complex<double>> ek(xs.size()), dk(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        ek[i] = sq::complex_kernel(k, xs[i], k);
        dk[i] = sq::dirichlet(k, xs[i]);
      }
      double lhs = sq::norms(xs, ek, true).l1 + sq::norms(xs, dk, true).l1;
      double rhs = std::log(double(k));
      rows.push_back({k, lhs, rhs, sq::ext_ratio(lhs, rhs)});
    }
    sq::RatioTable t = sq::make_ratio_table("kernel L1 mass against log k", std::move(rows));
    bool ok = std::isfinite(t.fit.constant) && !t.fit.grows();
    result["norms"] = sq::to_json(t);
    result["norms"]["pass"] = ok;
    if (!o.csv_path.empty()) sq::write_csv_atomic(o.csv_path, sq::to_csv(t));
    pass = pass && ok;
  }
  ordered_json config{{"check", o.kernel_check}, {"kmax", o.kmax}};
  emit("kernels", std::move(config), std::move(result), o.json_path);
  return pass ? 0 : 2;
}

int run_eval(const Opts& o) {
  sq::TwoSidedSeq f = parse_two_sided(o);
  auto xs = resolve_grid(o, sq::Domain::minus_pi_pi).realize();
  auto sums = sq::partial_sums_on_grid(f, {o.n}, xs);
  sq::NormPair np = sq::norms(xs, sums[0]);
  sq::SeriesEval e{std::move(xs), std::move(sums[0]), np.sup, np.l1, 0.0, 0.0};
  if (!o.csv_path.empty()) sq::write_csv_atomic(o.csv_path, sq::to_csv(e));
  ordered_json config{{"pos", o.pos.empty() ? o.rule : o.pos}, {"neg", o.neg}, {"n", o.n}};
  emit("eval", std::move(config),
       ordered_json{{"n", o.n},
                    {"points", e.xs.size()},
                    {"sup_norm", sq::num(e.sup_norm)},
                    {"l1_norm", sq::num(e.l1_norm)}},
       o.json_path);
  return 0;
}

void print_error(const std::string& code, const std::string& message) {
  ordered_json e;
  e["error"] = ordered_json{{"code", code}, {"message", message}};
  std::fputs((e.dump(2) + "\n").c_str(), stdout);
}

}  // namespace

int main(int argc, char** argv) {
  auto t0 = std::chrono::steady_clock::now();
  Opts o;
  int code = 0;

  CLI::App app{"Sequence class membership checks and trigonometric series experiments"};
  app.set_version_flag("--version", sq::kVersion);
  app.set_config("--config", "", "Read options from an INI file (flags take precedence)");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* c) {
    c->add_option("--json", o.json_path, "Write the JSON report here as well as to stdout");
    c->add_option("--csv", o.csv_path, "Write the command's curve table here");
    c->add_option("--grid", o.grid_points, "Base evaluation grid points");
  };
  auto add_two_sided = [&](CLI::App* c) {
    c->add_option("--pos", o.pos, "Positive-side coefficient rule");
    c->add_option("--neg", o.neg, "Negative-side coefficient rule (default zero)");
    c->add_option("--rule", o.rule, "Shorthand for --pos with --neg zero");
  };
  auto add_n_range = [&](CLI::App* c) {
    c->add_option("--nmax", o.nmax, "Top n for the default dyadic n list");
    c->add_option("--nlist", o.n_list, "Explicit comma-separated n list")->delimiter(',');
  };

  CLI::App* c_check = app.add_subcommand("check", "Class membership sweep for one rule");
  c_check->alias("check-class");
  c_check->add_option("--rule", o.rule, "Coefficient rule")->required();
  c_check->add_option("--class", o.cls, "One of ms, cqms, rbvs, gbvs, nbvs")->required();
  c_check->add_option("--horizon", o.horizon, "Largest tested block start m");
  c_check->add_option("--N0", o.N0, "Window width for the gbvs ratio");
  add_common(c_check);
  c_check->callback([&] { code = run_check(o); });

  CLI::App* c_incl =
      app.add_subcommand("verify-inclusions", "All five class checks plus chain consistency");
  c_incl->add_option("--rule", o.rule, "Coefficient rule")->required();
  c_incl->add_option("--horizon", o.horizon, "Largest tested block start m");
  add_common(c_incl);
  c_incl->callback([&] { code = run_verify_inclusions(o); });

  CLI::App* c_ce = app.add_subcommand(
      "counterexample", "Dyadic-block sequence: two-sided ratios stay bounded, windowed ones grow");
  c_ce->add_option("--horizon", o.horizon, "Largest tested block start m");
  c_ce->add_option("--N0", o.N0, "Window width for the gbvs ratio");
  add_common(c_ce);
  c_ce->callback([&] { code = run_counterexample(o); });

  CLI::App* c_unif =
      app.add_subcommand("uniform", "Continuity criterion and sup-norm remainder decay");
  add_two_sided(c_unif);
  c_unif->add_option("--horizon", o.horizon, "Sampling horizon for the criterion");
  add_n_range(c_unif);
  add_common(c_unif);
  c_unif->callback([&] { code = run_uniform(o); });

  CLI::App* c_sine =
      app.add_subcommand("sine", "Uniform-convergence criterion for sine coefficients");
  c_sine->add_option("--rule", o.rule, "Sine coefficient rule")->required();
  c_sine->add_option("--horizon", o.horizon, "Sampling horizon");
  add_common(c_sine);
  c_sine->callback([&] { code = run_sine(o); });

  CLI::App* c_l1 = app.add_subcommand("l1", "Integral-norm criterion, remainder decay, delayed means");
  add_two_sided(c_l1);
  c_l1->add_option("--psi", o.psi, "Optional target rate rule; adds the rate section");
  c_l1->add_option("--horizon", o.horizon, "Sampling horizon for the criterion");
  add_n_range(c_l1);
  add_common(c_l1);
  c_l1->callback([&] { code = run_l1(o); });

  CLI::App* c_rate = app.add_subcommand("rate", "Match remainder norms against a target rate");
  add_two_sided(c_rate);
  c_rate->add_option("--psi", o.psi, "Target rate rule")->required();
  add_n_range(c_rate);
  add_common(c_rate);
  c_rate->callback([&] { code = run_rate(o); });

  CLI::App* c_approx =
      app.add_subcommand("approx", "Best-approximation brackets and coefficient-side ratios");
  add_two_sided(c_approx);
  c_approx->add_option("--horizon", o.horizon, "Coefficient scan horizon");
  add_n_range(c_approx);
  c_approx->add_option("--threshold-c", o.threshold_c, "Equivalence window cap");
  c_approx->add_option("--threshold-slope", o.threshold_slope, "Flat-trend slope cap");
  add_common(c_approx);
  c_approx->callback([&] { code = run_approx(o); });

  CLI::App* c_kern = app.add_subcommand("kernels", "Kernel identities and L1 mass growth");
  c_kern->add_option("--check", o.kernel_check, "identities, norms, or all")
      ->check(CLI::IsMember({"identities", "norms", "all"}));
  c_kern->add_option("--kmax", o.kmax, "Largest kernel index");
  add_common(c_kern);
  c_kern->callback([&] { code = run_kernels(o); });

  CLI::App* c_eval = app.add_subcommand("eval", "Partial sum values on a grid");
  add_two_sided(c_eval);
  c_eval->add_option("--n", o.n, "Partial sum cut");
  add_common(c_eval);
  c_eval->callback([&] { code = run_eval(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    if (rc == 0) return 0;
    print_error("bad_config", e.what());
    return 1;
  } catch (const sq::Error& e) {
    print_error(sq::errc_name(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "wall_time_s %.3f\n", secs);
  return code;
}
