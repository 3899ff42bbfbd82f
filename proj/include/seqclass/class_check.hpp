#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqclass/sequence.hpp"

namespace seqclass {

// The five variation classes, ordered weakest-to-strongest constraint
// direction for the inclusion chain:
//   MS => RBVS and CQMS; RBVS or CQMS => GBVS(1); GBVS(1) => NBVS.
enum class SeqClass { MS, CQMS, RBVS, GBVS, NBVS };

const char* class_name(SeqClass c) noexcept;
std::optional<SeqClass> class_from_name(const std::string& name) noexcept;

// Blockwise two-sided bound ratio:
//   sum_{k=m}^{2m} |delta c_k| / (|c_m| + |c_{2m}|),
// with 0/0 -> 0 and positive/0 -> +inf.
double nbvs_ratio(const SequenceRule& seq, std::uint64_t m);

// One-sided window bound ratio:
//   sum_{k=m}^{2m} |delta c_k| / max_{m <= n < m+N0} |c_n|.
double gbvs_ratio(const SequenceRule& seq, std::uint64_t m, std::uint64_t N0 = 1);

// Rest-variation ratio. The numerator covers [m, horizon] exactly and closes
// the tail with the rule's certified variation bound, so the result is an
// upper estimate of sum_{k>=m} |delta c_k| / |c_m| (possibly +inf).
double rbvs_ratio(const SequenceRule& seq, std::uint64_t m, std::uint64_t horizon);

// Least alpha >= 0 making c_n / n^alpha nonincreasing across the scanned
// range: sup_n log(c_{n+1}/c_n) / log((n+1)/n), clamped at 0, +inf when a
// positive term follows a zero. Requires real nonnegative terms.
double cqms_min_alpha(const SequenceRule& seq, std::uint64_t horizon);

struct ClassVerdict {
  SeqClass cls = SeqClass::NBVS;
  std::uint64_t horizon = 0;
  std::uint64_t N0 = 1;
  double K_hat = 0.0;              // sup of the class ratio over tested m
  std::uint64_t witness_m = 1;     // smallest argmax of the ratio
  bool member = false;
  std::optional<double> growth_slope;  // log-log ratio trend, top two decades
  // Per-m ratios for optional CSV emission (index m-1, m in [1, horizon]).
  std::vector<double> ratios;
};

// Membership sweep over m in [1, horizon]. Finite-horizon evidence only:
// member means K_hat is finite with no positive ratio growth trend
// (slope < 0.1); CQMS additionally caps alpha* at 64. Horizon must be >= 4.
ClassVerdict check_class(const SequenceRule& seq, SeqClass cls, std::uint64_t horizon,
                         std::uint64_t N0 = 1);

struct InclusionReport {
  std::array<ClassVerdict, 5> verdicts;  // MS, CQMS, RBVS, GBVS, NBVS
  std::vector<std::string> violations;   // inclusion-chain inconsistencies
  bool consistent = true;
};

// Runs all five checks and validates the inclusion chain on the verdicts.
// Any violation is an internal inconsistency of the checkers, never a
// mathematical finding. Requires a real-valued rule.
InclusionReport verify_inclusions(const SequenceRule& seq, std::uint64_t horizon);

}  // namespace seqclass
