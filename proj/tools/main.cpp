#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cobreak/common.hpp"
#include "cobreak/pipeline.hpp"

namespace {

using namespace cobreak;

AmendStrategy strategy_from_name(const std::string& name) {
  if (name == "post") return AmendStrategy::post;
  if (name == "interleaved") return AmendStrategy::interleaved;
  if (name == "post-square") return AmendStrategy::post_square;
  if (name == "interleaved-general") return AmendStrategy::interleaved_general;
  throw std::invalid_argument("unknown strategy: " + name);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"coherence-breaking analysis and unitary amendment of quantum channels"};
  app.require_subcommand(1);

  std::string file;
  bool degrees = false;

  auto* analyze = app.add_subcommand("analyze", "full verdict report for a channel");
  AnalyzeOptions aopt;
  std::string json_path;
  analyze->add_option("file", file, "channel spec file")->required();
  analyze->add_flag("--degrees", degrees, "angles in the file are in degrees");
  analyze->add_option("--max-k", aopt.max_k, "breaking-index search cap")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--skip-cptp", aopt.skip_cptp, "skip CPTP validation");
  analyze->add_option("--json", json_path, "also write the report as JSON");

  auto* amend = app.add_subcommand("amend", "search for an amending unitary");
  AmendOptions mopt;
  std::string strategy = "post";
  amend->add_option("file", file, "channel spec file")->required();
  amend->add_flag("--degrees", degrees, "angles in the file are in degrees");
  amend
      ->add_option("--strategy", strategy,
                   "post | interleaved | post-square | interleaved-general")
      ->required();
  amend->add_option("--grid", mopt.grid, "points per search angle")
      ->check(CLI::PositiveNumber);
  amend->add_option("--depth", mopt.depth, "channel copies for interleaved-general")
      ->check(CLI::PositiveNumber);
  amend->add_option("--seed", mopt.seed, "seed for sampled unitaries");

  auto* sweep = app.add_subcommand("sweep", "family parameter sweep as CSV");
  SweepOptions sopt;
  std::string out_path;
  sweep->add_option("--family", sopt.family, "channel family (1 or 2)")->required();
  sweep->add_option("--grid", sopt.grid, "points per angle over [0, 2 pi]")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* validate = app.add_subcommand("validate", "parse a spec and check CPTP");
  validate->add_option("file", file, "channel spec file")->required();
  validate->add_flag("--degrees", degrees, "angles in the file are in degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  if (analyze->parsed()) {
    const ChannelSpec spec = parse_spec(file, degrees);
    const ReportRecord rec = run_analyze(spec, aopt);
    std::cout << render_text(rec);
    if (!json_path.empty()) write_file(json_path, render_json(rec));
    return kExitOk;
  }

  if (amend->parsed()) {
    mopt.strategy = strategy_from_name(strategy);
    const ChannelSpec spec = parse_spec(file, degrees);
    const AmendOutcome out = run_amend(spec, mopt);
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << render_amendment(out.result);
    return kExitOk;
  }

  if (sweep->parsed()) {
    const std::string csv = run_sweep_csv(sopt);
    if (out_path.empty())
      std::cout << csv;
    else
      write_file(out_path, csv);
    return kExitOk;
  }

  // validate
  const ChannelSpec spec = parse_spec(file, degrees);
  const AffineRep affine = spec_affine(spec);
  const auto kraus = spec_kraus(spec);
  const CptpVerdict v = kraus ? validate_cptp(*kraus) : validate_cptp(affine);
  std::cout << "label:   " << (spec.label.empty() ? "(unlabeled)" : spec.label) << '\n'
            << "dim:     " << spec.dim << '\n'
            << "cp:      " << (v.cp ? "true" : "false")
            << " (min eigenvalue " << v.min_eigenvalue << ")\n"
            << "tp:      " << (v.tp ? "true" : "false")
            << " (marginal deviation " << v.tp_deviation << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* tol = std::getenv("COBREAK_TOL")) {
    try {
      set_matrix_tol(std::stod(tol));
    } catch (const std::exception&) {
      std::cerr << "error: COBREAK_TOL must be a positive number\n";
      return kExitParse;
    }
  }

  try {
    return dispatch(argc, argv);
  } catch (const spec_parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const consistency_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitConsistency;
  }
}
