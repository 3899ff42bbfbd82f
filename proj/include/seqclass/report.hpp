#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqclass/approx.hpp"
#include "seqclass/class_check.hpp"
#include "seqclass/convergence.hpp"
#include "seqclass/fitting.hpp"
#include "seqclass/trig_eval.hpp"

namespace seqclass {

// Insertion-ordered JSON keeps reports byte-stable across runs.
using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

// JSON has no encoding for non-finite doubles; they become the strings
// "inf", "-inf", "nan". Finite values round-trip exactly.
ordered_json num(double v);
ordered_json num(std::complex<double> v);  // {"re": ..., "im": ...}

// "gbvs(2)" style id; the window width only matters for that one class.
std::string class_id(const ClassVerdict& v);

ordered_json to_json(const TrendFit& f);
ordered_json to_json(const ClassVerdict& v);
ordered_json to_json(const InclusionReport& r);
ordered_json to_json(const RatioRow& r);
ordered_json to_json(const RatioTable& t);
ordered_json to_json(const CriterionReport& r);
ordered_json to_json(const DecayTable& t);
ordered_json to_json(const L1Table& t);
ordered_json to_json(const RateReport& r);
ordered_json to_json(const QBreakdown& q);
ordered_json to_json(const ApproxBracket& b);
ordered_json to_json(const Corollary1Report& r);

// Minimal rectangular table for plot-oriented CSV output.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(double v);  // shortest exact round-trip form
std::string csv_cell(std::uint64_t v);

Csv to_csv(const ClassVerdict& v);                // m, ratio
Csv to_csv(const RatioTable& t);                  // n, lhs, rhs, ratio
Csv to_csv(const CriterionReport& r);             // n, value
Csv to_csv(const DecayTable& t);                  // n, value, bound
Csv to_csv(const L1Table& t);
Csv to_csv(const RateReport& r);
Csv to_csv(const std::vector<ApproxBracket>& b);
Csv to_csv(const SeriesEval& e);                  // x, re, im

// Both writers stage into a sibling temp file and rename it over the target,
// so readers never observe a half-written report. Throws Errc::io.
void write_json_atomic(const std::string& path, const ordered_json& j);
void write_csv_atomic(const std::string& path, const Csv& csv);

}  // namespace seqclass
