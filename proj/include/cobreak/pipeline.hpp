#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cobreak/amend.hpp"
#include "cobreak/spec_io.hpp"

namespace cobreak {

// CLI exit codes.  Pipeline functions throw; the frontend maps exception
// types onto these: spec_parse_error / argument errors -> kExitParse,
// consistency_error -> kExitConsistency, precondition_error -> kExitPrecondition.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitConsistency = 3;
inline constexpr int kExitPrecondition = 4;

// One analysis run; every verdict field is either filled in or reads
// "skipped(<reason>)".
struct ReportRecord {
  std::string label;
  int dim = 0;
  std::string cptp;
  std::string incoherent;
  std::string nc;
  std::string cbc;
  std::string index;
  std::vector<std::string> amendments;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<std::string> warnings;
};

struct AnalyzeOptions {
  int max_k = 16;
  bool skip_cptp = false;
};

// Full verdict pipeline: CPTP validation, incoherence, non-coherence-
// generation, both coherence-breaking routes, index.  Throws
// consistency_error when the structural and oracle routes disagree.
ReportRecord run_analyze(const ChannelSpec& spec, const AnalyzeOptions& opt);

struct AmendOptions {
  AmendStrategy strategy = AmendStrategy::post;
  int grid = 8;
  int depth = 2;
  std::uint64_t seed = 1;
};

struct AmendOutcome {
  AmendmentResult result;
  std::vector<std::string> warnings;
};

AmendOutcome run_amend(const ChannelSpec& spec, const AmendOptions& opt);

struct SweepOptions {
  int family = 1;
  int grid = 9;  // points per angle, inclusive over [0, 2 pi]
};

// Parameter sweep as a CSV document (header row, LF line endings).  Columns:
// theta,phi,xi,eta,incoherent,cbc_criterion,cbc_oracle,index.  Throws
// consistency_error if the closed-form criterion and the oracle disagree on
// any row (family 1: on incoherent rows).
std::string run_sweep_csv(const SweepOptions& opt);

// Uniform inclusive grid over [0, 2 pi] with `points` entries.
std::vector<double> angle_grid(int points);

std::string render_text(const ReportRecord& r);
std::string render_json(const ReportRecord& r);
std::string render_amendment(const AmendmentResult& r);
std::string strategy_name(AmendStrategy s);

}  // namespace cobreak
