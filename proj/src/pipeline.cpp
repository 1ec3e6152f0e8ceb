#include "cobreak/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cobreak/analysis.hpp"
#include "cobreak/common.hpp"

namespace cobreak {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string twelve_digits(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string index_str(const IndexResult& r) {
  if (r.index) return std::to_string(*r.index);
  return "exceeds_cap";
}

}  // namespace

std::vector<double> angle_grid(int points) {
  if (points < 1) throw std::invalid_argument("angle grid needs at least one point");
  std::vector<double> out;
  if (points == 1) {
    out.push_back(0.0);
    return out;
  }
  for (int i = 0; i < points; ++i)
    out.push_back(2.0 * std::numbers::pi * i / (points - 1));
  return out;
}

ReportRecord run_analyze(const ChannelSpec& spec, const AnalyzeOptions& opt) {
  ReportRecord rec;
  rec.label = spec.label.empty() ? "(unlabeled)" : spec.label;
  rec.dim = spec.dim;

  auto t0 = Clock::now();
  const AffineRep affine = spec_affine(spec);
  const std::optional<KrausChannel> kraus = spec_kraus(spec);
  rec.timings_ms.emplace_back("build", ms_since(t0));

  t0 = Clock::now();
  if (opt.skip_cptp) {
    rec.cptp = "skipped(--skip-cptp)";
  } else {
    const CptpVerdict v = kraus ? validate_cptp(*kraus) : validate_cptp(affine);
    std::ostringstream line;
    line << "cp=" << bool_str(v.cp) << " tp=" << bool_str(v.tp)
         << " min_eig=" << short_number(v.min_eigenvalue);
    rec.cptp = line.str();
    if (!v.cp || !v.tp)
      rec.warnings.push_back("channel failed CPTP validation; verdicts may be unphysical");
  }
  rec.timings_ms.emplace_back("cptp", ms_since(t0));

  t0 = Clock::now();
  rec.incoherent = kraus ? bool_str(is_incoherent_kraus(*kraus))
                         : "skipped(incoherence needs a Kraus decomposition)";
  rec.nc = bool_str(is_nc(affine));

  const CbcVerdict structural = is_cbc_structural(affine);
  const CbcVerdict oracle = kraus ? is_cbc_oracle(*kraus) : is_cbc_oracle(affine);
  if (structural.is_cbc != oracle.is_cbc) {
    std::ostringstream msg;
    msg << "coherence-breaking routes disagree: structural=" << bool_str(structural.is_cbc)
        << " oracle=" << bool_str(oracle.is_cbc);
    throw consistency_error(msg.str());
  }
  {
    std::ostringstream line;
    line << bool_str(structural.is_cbc) << " (structural and oracle agree)";
    if (!structural.is_cbc && oracle.witness)
      line << "; witness output c_l1=" << short_number(oracle.witness->output_c_l1);
    rec.cbc = line.str();
  }

  const IndexResult idx = cbc_index(affine, opt.max_k);
  {
    std::ostringstream line;
    line << index_str(idx) << " (cap " << idx.cap << ")";
    rec.index = line.str();
  }
  if (idx.nc_warning)
    rec.warnings.push_back(
        "channel can generate coherence from diagonal inputs; the breaking "
        "index is intended for incoherent channels");
  rec.timings_ms.emplace_back("analysis", ms_since(t0));

  rec.amendments.push_back("skipped(not requested)");
  return rec;
}

AmendOutcome run_amend(const ChannelSpec& spec, const AmendOptions& opt) {
  if (opt.grid < 1) throw std::invalid_argument("--grid must be >= 1");
  AmendOutcome out;
  const AffineRep affine = spec_affine(spec);

  switch (opt.strategy) {
    case AmendStrategy::post:
      out.result = amend_search_post(affine, opt.grid);
      break;
    case AmendStrategy::interleaved:
    case AmendStrategy::interleaved_general: {
      const int depth = opt.strategy == AmendStrategy::interleaved ? 2 : opt.depth;
      const IndexResult idx = cbc_index(affine);
      if (!idx.index || *idx.index != depth) {
        std::ostringstream msg;
        msg << "breaking index is " << index_str(idx) << "; the interleaved scheme targets "
            << "index " << depth;
        out.warnings.push_back(msg.str());
      }
      out.result = amend_search_interleaved(affine, opt.grid, depth);
      break;
    }
    case AmendStrategy::post_square:
      out.result = impossibility_post_square(affine, /*samples=*/4 * opt.grid, opt.seed,
                                             opt.grid);
      break;
  }
  return out;
}

std::string run_sweep_csv(const SweepOptions& opt) {
  if (opt.family != 1 && opt.family != 2)
    throw std::invalid_argument("--family must be 1 or 2");
  if (opt.grid < 1) throw std::invalid_argument("--grid must be >= 1");

  const std::vector<double> grid = angle_grid(opt.grid);
  const std::vector<double> etas =
      opt.family == 1 ? grid : std::vector<double>{0.0};  // family 2 ignores eta

  std::ostringstream csv;
  csv << "theta,phi,xi,eta,incoherent,cbc_criterion,cbc_oracle,index\n";
  long row = 0;
  for (double theta : grid) {
    for (double phi : grid) {
      for (double xi : grid) {
        for (double eta : etas) {
          NCFamilyParams p{opt.family, theta, phi, xi, eta};
          const KrausChannel ch = nc_family_channel(p);
          const bool incoherent = is_incoherent_kraus(ch);
          const bool criterion = opt.family == 1 ? family1_cbc(p) : family2_cbc(p);
          const bool oracle = is_cbc_oracle(ch).is_cbc;
          const IndexResult idx = cbc_index(kraus_to_affine(ch));

          // The closed-form criterion covers incoherent channels; family 2 is
          // incoherent everywhere, family 1 only on part of the parameter space.
          if ((opt.family == 2 || incoherent) && criterion != oracle) {
            std::ostringstream msg;
            msg << "sweep row " << row << " (theta=" << format_number(theta)
                << ", phi=" << format_number(phi) << ", xi=" << format_number(xi)
                << ", eta=" << format_number(eta)
                << "): criterion=" << bool_str(criterion) << " oracle=" << bool_str(oracle);
            throw consistency_error(msg.str());
          }

          csv << format_number(theta) << ',' << format_number(phi) << ','
              << format_number(xi) << ',' << format_number(eta) << ','
              << bool_str(incoherent) << ',' << bool_str(criterion) << ','
              << bool_str(oracle) << ',' << index_str(idx) << '\n';
          ++row;
        }
      }
    }
  }
  return csv.str();
}

std::string strategy_name(AmendStrategy s) {
  switch (s) {
    case AmendStrategy::post: return "post";
    case AmendStrategy::interleaved: return "interleaved";
    case AmendStrategy::post_square: return "post-square";
    case AmendStrategy::interleaved_general: return "interleaved-general";
  }
  return "?";
}

std::string render_text(const ReportRecord& r) {
  std::ostringstream out;
  out << "label:      " << r.label << '\n'
      << "dim:        " << r.dim << '\n'
      << "cptp:       " << r.cptp << '\n'
      << "incoherent: " << r.incoherent << '\n'
      << "nc:         " << r.nc << '\n'
      << "cbc:        " << r.cbc << '\n'
      << "index:      " << r.index << '\n';
  for (const auto& a : r.amendments) out << "amendment:  " << a << '\n';
  out << "timing_ms: ";
  for (const auto& [stage, ms] : r.timings_ms) out << ' ' << stage << '=' << short_number(ms);
  out << '\n';
  for (const auto& w : r.warnings) out << "warning:    " << w << '\n';
  return out.str();
}

std::string render_json(const ReportRecord& r) {
  nlohmann::json j;
  j["label"] = r.label;
  j["dim"] = r.dim;
  j["cptp"] = r.cptp;
  j["incoherent"] = r.incoherent;
  j["nc"] = r.nc;
  j["cbc"] = r.cbc;
  j["index"] = r.index;
  j["amendments"] = r.amendments;
  nlohmann::json timings = nlohmann::json::object();
  for (const auto& [stage, ms] : r.timings_ms) timings[stage] = ms;
  j["timings_ms"] = timings;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

namespace {

std::string complex_str(const std::complex<double>& z) {
  std::ostringstream out;
  out << twelve_digits(z.real());
  out << (z.imag() < 0 ? '-' : '+');
  out << twelve_digits(std::abs(z.imag())) << 'i';
  return out.str();
}

}  // namespace

std::string render_amendment(const AmendmentResult& r) {
  std::ostringstream out;
  out << "strategy:   " << strategy_name(r.strategy) << '\n'
      << "success:    " << bool_str(r.success) << '\n'
      << "scanned:    " << r.scanned << " of " << r.grid_total << '\n';
  if (r.params) {
    out << "params:     alpha=" << twelve_digits(r.params->alpha)
        << " alpha1=" << twelve_digits(r.params->alpha1)
        << " alpha2=" << twelve_digits(r.params->alpha2)
        << " alpha3=" << twelve_digits(r.params->alpha3) << '\n';
  }
  if (r.plan) {
    out << "plan:       alpha=" << twelve_digits(r.plan->alpha) << " pairs=";
    for (const auto& [j, k] : r.plan->pairs) out << '(' << j << ',' << k << ')';
    out << " fixed=";
    for (int f : r.plan->fixed) out << f << ' ';
    out << '\n';
  }
  if (r.unitary.size() > 0) {
    out << "unitary:\n";
    for (Eigen::Index i = 0; i < r.unitary.rows(); ++i) {
      out << "  [";
      for (Eigen::Index j = 0; j < r.unitary.cols(); ++j) {
        if (j > 0) out << ", ";
        out << complex_str(r.unitary(i, j));
      }
      out << "]\n";
    }
  }
  if (r.witness) {
    out << "witness:    output c_l1=" << twelve_digits(r.witness->output_c_l1) << '\n';
  }
  if (!r.certificate.empty()) out << "certificate: " << r.certificate << '\n';
  return out.str();
}

}  // namespace cobreak
