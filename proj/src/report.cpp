#include "seqclass/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "seqclass/error.hpp"

namespace seqclass {

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ordered_json num(std::complex<double> v) {
  return ordered_json{{"re", num(v.real())}, {"im", num(v.imag())}};
}

std::string class_id(const ClassVerdict& v) {
  std::string id = class_name(v.cls);
  if (v.cls == SeqClass::GBVS) id += "(" + std::to_string(v.N0) + ")";
  return id;
}

namespace {

ordered_json opt_num(const std::optional<double>& v) {
  return v ? num(*v) : ordered_json(nullptr);
}

}  // namespace

ordered_json to_json(const TrendFit& f) {
  return ordered_json{
      {"constant", num(f.constant)}, {"slope", opt_num(f.slope)}, {"grows", f.grows()}};
}

ordered_json to_json(const ClassVerdict& v) {
  return ordered_json{{"class", class_id(v)},
                      {"horizon", v.horizon},
                      {"K_hat", num(v.K_hat)},
                      {"witness_m", v.witness_m},
                      {"member", v.member},
                      {"growth_slope", opt_num(v.growth_slope)},
                      {"ratios", nullptr}};
}

ordered_json to_json(const InclusionReport& r) {
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
  return ordered_json{
      {"verdicts", verdicts}, {"violations", r.violations}, {"consistent", r.consistent}};
}

ordered_json to_json(const RatioRow& r) {
  return ordered_json{
      {"n", r.n}, {"lhs", num(r.lhs)}, {"rhs", num(r.rhs)}, {"ratio", num(r.ratio)}};
}

ordered_json to_json(const RatioTable& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) rows.push_back(to_json(r));
  return ordered_json{{"what", t.what}, {"rows", rows}, {"fit", to_json(t.fit)}};
}

ordered_json to_json(const CriterionReport& r) {
  ordered_json samples = ordered_json::array();
  for (const auto& s : r.samples)
    samples.push_back(ordered_json{{"n", s.n}, {"value", num(s.value)}});
  return ordered_json{{"criterion", r.criterion},
                      {"sequence", r.sequence},
                      {"horizon", r.horizon},
                      {"samples", samples},
                      {"verdict", verdict_name(r.verdict)},
                      {"witness", r.witness ? ordered_json(*r.witness) : ordered_json(nullptr)},
                      {"detail", r.detail}};
}

ordered_json to_json(const DecayTable& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows)
    rows.push_back(ordered_json{{"n", r.n}, {"value", num(r.value)}, {"bound", num(r.bound)}});
  return ordered_json{{"quantity", t.quantity}, {"rows", rows}, {"slope", opt_num(t.slope)}};
}

ordered_json to_json(const L1Table& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows)
    rows.push_back(ordered_json{{"n", r.n},
                                {"l1", num(r.l1)},
                                {"l1_bound", num(r.l1_bound)},
                                {"phi_lower", num(r.phi_lower)},
                                {"log_surrogate", num(r.log_surrogate)},
                                {"tau_gap_l1", num(r.tau_gap_l1)}});
  return ordered_json{{"rows", rows}, {"tau_fit", to_json(t.tau_fit)}, {"lower_ok", t.lower_ok}};
}

ordered_json to_json(const RateReport& r) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back(ordered_json{{"n", row.n},
                                {"psi", num(row.psi)},
                                {"c1", num(row.c1)},
                                {"c2", num(row.c2)},
                                {"c3", num(row.c3)},
                                {"en_lo", num(row.en_lo)},
                                {"en_hi", num(row.en_hi)}});
  return ordered_json{{"rows", rows},
                      {"C1", num(r.C1)},
                      {"C2", num(r.C2)},
                      {"C3", num(r.C3)},
                      {"fit1", to_json(r.fit1)},
                      {"fit2", to_json(r.fit2)},
                      {"fit3", to_json(r.fit3)},
                      {"consistent", r.consistent}};
}

ordered_json to_json(const QBreakdown& q) {
  return ordered_json{{"n", q.n},
                      {"term1", num(q.term1)},
                      {"term2", ordered_json::array({num(q.term2_lo), num(q.term2_hi)})},
                      {"term3", ordered_json::array({num(q.term3_lo), num(q.term3_hi)})},
                      {"lo", num(q.lo())},
                      {"hi", num(q.hi())}};
}

ordered_json to_json(const ApproxBracket& b) {
  return ordered_json{{"n", b.n},
                      {"lower", num(b.lower)},
                      {"upper", num(b.upper)},
                      {"Q", ordered_json::array({num(b.Q_lo), num(b.Q_hi)})},
                      {"q_over_upper", num(b.q_over_upper)},
                      {"lower_over_q", num(b.lower_over_q)}};
}

ordered_json to_json(const Corollary1Report& r) {
  return ordered_json{{"side_condition", to_json(r.side_condition)},
                      {"hypothesis_ok", r.hypothesis_ok},
                      {"conclusion", to_json(r.conclusion)}};
}

std::string csv_cell(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;  // 40 bytes always suffice for shortest double form
  return std::string(buf, p);
}

std::string csv_cell(std::uint64_t v) { return std::to_string(v); }

Csv to_csv(const ClassVerdict& v) {
  Csv c{{"m", "ratio"}, {}};
  for (std::size_t i = 0; i < v.ratios.size(); ++i)
    c.rows.push_back({csv_cell(std::uint64_t(i + 1)), csv_cell(v.ratios[i])});
  return c;
}

Csv to_csv(const RatioTable& t) {
  Csv c{{"n", "lhs", "rhs", "ratio"}, {}};
  for (const auto& r : t.rows)
    c.rows.push_back({csv_cell(r.n), csv_cell(r.lhs), csv_cell(r.rhs), csv_cell(r.ratio)});
  return c;
}

Csv to_csv(const CriterionReport& r) {
  Csv c{{"n", "value"}, {}};
  for (const auto& s : r.samples) c.rows.push_back({csv_cell(s.n), csv_cell(s.value)});
  return c;
}

Csv to_csv(const DecayTable& t) {
  Csv c{{"n", "value", "bound"}, {}};
  for (const auto& r : t.rows)
    c.rows.push_back({csv_cell(r.n), csv_cell(r.value), csv_cell(r.bound)});
  return c;
}

Csv to_csv(const L1Table& t) {
  Csv c{{"n", "l1", "l1_bound", "phi_lower", "log_surrogate", "tau_gap_l1"}, {}};
  for (const auto& r : t.rows)
    c.rows.push_back({csv_cell(r.n), csv_cell(r.l1), csv_cell(r.l1_bound),
                      csv_cell(r.phi_lower), csv_cell(r.log_surrogate),
                      csv_cell(r.tau_gap_l1)});
  return c;
}

Csv to_csv(const RateReport& r) {
  Csv c{{"n", "psi", "c1", "c2", "c3", "en_lo", "en_hi"}, {}};
  for (const auto& row : r.rows)
    c.rows.push_back({csv_cell(row.n), csv_cell(row.psi), csv_cell(row.c1), csv_cell(row.c2),
                      csv_cell(row.c3), csv_cell(row.en_lo), csv_cell(row.en_hi)});
  return c;
}

Csv to_csv(const std::vector<ApproxBracket>& bs) {
  Csv c{{"n", "lower", "upper", "Q_lo", "Q_hi", "q_over_upper", "lower_over_q"}, {}};
  for (const auto& b : bs)
    c.rows.push_back({csv_cell(b.n), csv_cell(b.lower), csv_cell(b.upper), csv_cell(b.Q_lo),
                      csv_cell(b.Q_hi), csv_cell(b.q_over_upper), csv_cell(b.lower_over_q)});
  return c;
}

Csv to_csv(const SeriesEval& e) {
  Csv c{{"x", "re", "im"}, {}};
  for (std::size_t i = 0; i < e.xs.size(); ++i)
    c.rows.push_back(
        {csv_cell(e.xs[i]), csv_cell(e.values[i].real()), csv_cell(e.values[i].imag())});
  return c;
}

namespace {

void write_atomic(const std::string& path, const std::string& body) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out.good()) throw Error(Errc::io, "cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(Errc::io, "cannot move " + tmp + " into place");
  }
}

}  // namespace

void write_json_atomic(const std::string& path, const ordered_json& j) {
  write_atomic(path, j.dump(2) + "\n");
}

void write_csv_atomic(const std::string& path, const Csv& csv) {
  std::string body;
  for (std::size_t i = 0; i < csv.header.size(); ++i) {
    if (i) body += ',';
    body += csv.header[i];
  }
  body += '\n';
  for (const auto& row : csv.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) body += ',';
      body += row[i];
    }
    body += '\n';
  }
  write_atomic(path, body);
}

}  // namespace seqclass
