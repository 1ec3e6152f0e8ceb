#include "cobreak/amend.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cobreak/common.hpp"

namespace cobreak {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Angle grids for the deterministic searches: rotation angles k pi / n
// (optionally including 0), phases 2 pi k / n over [0, 2 pi).
std::vector<double> rotation_angles(int n, bool include_zero) {
  if (n < 1) throw std::invalid_argument("grid must be >= 1");
  std::vector<double> out;
  if (include_zero) out.push_back(0.0);
  for (int k = 1; k <= n; ++k) out.push_back(kPi * k / n);
  return out;
}

std::vector<double> phase_grid(int n) {
  if (n < 1) throw std::invalid_argument("grid must be >= 1");
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(2.0 * kPi * k / n);
  return out;
}

}  // namespace

Eigen::MatrixXcd general_unitary(const UnitaryParams& p) {
  if (std::abs(std::sin(2.0 * p.alpha)) > matrix_tol()) {
    // Off the sin(2a) = 0 locus the form is unitary only when a3 = a1 + a2.
    const double gap = std::remainder(p.alpha3 - p.alpha1 - p.alpha2, 2.0 * kPi);
    if (std::abs(gap) > matrix_tol()) {
      std::ostringstream msg;
      msg << "unitarity requires alpha3 = alpha1 + alpha2 (mod 2 pi); off by " << gap;
      throw std::invalid_argument(msg.str());
    }
  }
  const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
  Eigen::MatrixXcd u(2, 2);
  u << ca, -std::exp(kI * p.alpha1) * sa,
      std::exp(kI * p.alpha2) * sa, std::exp(kI * p.alpha3) * ca;
  return u;
}

Eigen::Matrix3d transfer_matrix_of_unitary(const UnitaryParams& p) {
  const AffineRep rep = kraus_to_affine(unitary_channel(general_unitary(p)));
  return Eigen::Matrix3d(rep.M);
}

BlockRotationPlan BlockRotationPlan::adjacent(int dim, double alpha, int start) {
  if (dim < 2) throw std::invalid_argument("block rotation requires dim >= 2");
  if (start < 0 || start >= dim) throw std::invalid_argument("pairing start out of range");
  BlockRotationPlan plan;
  plan.dim = dim;
  plan.alpha = alpha;
  for (int i = 0; i < start; ++i) plan.fixed.push_back(i);
  int i = start;
  for (; i + 1 < dim; i += 2) plan.pairs.emplace_back(i, i + 1);
  for (; i < dim; ++i) plan.fixed.push_back(i);
  return plan;
}

Eigen::MatrixXcd block_rotation_unitary(const BlockRotationPlan& plan) {
  if (plan.dim < 2) throw std::invalid_argument("block rotation requires dim >= 2");
  std::vector<int> seen(plan.dim, 0);
  for (int f : plan.fixed) {
    if (f < 0 || f >= plan.dim) throw std::invalid_argument("fixed index out of range");
    ++seen[f];
  }
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(plan.dim, plan.dim);
  for (int f : plan.fixed) u(f, f) = 1.0;
  const double c = std::cos(plan.alpha), s = std::sin(plan.alpha);
  for (const auto& [j, k] : plan.pairs) {
    if (j < 0 || j >= plan.dim || k < 0 || k >= plan.dim || j == k)
      throw std::invalid_argument("rotation pair out of range");
    ++seen[j];
    ++seen[k];
    u(j, j) = c;
    u(j, k) = -s;
    u(k, j) = s;
    u(k, k) = c;
  }
  for (int i = 0; i < plan.dim; ++i)
    if (seen[i] != 1)
      throw std::invalid_argument("pairs and fixed indices must partition 0..dim-1");
  return u.cast<std::complex<double>>();
}

namespace {

AmendmentResult evaluate_candidate(AmendStrategy strategy, const AffineRep& composed) {
  AmendmentResult r;
  r.strategy = strategy;
  const CbcVerdict verdict = is_cbc_oracle(composed);
  r.success = !verdict.is_cbc;
  r.witness = verdict.witness;
  return r;
}

AffineRep unitary_affine(const Eigen::MatrixXcd& U) {
  return kraus_to_affine(unitary_channel(U));
}

// Phi . Lambda . Phi . ... with `depth` copies of Phi and Lambda interleaved.
AffineRep interleave_chain(const AffineRep& ch, const AffineRep& lam, int depth) {
  AffineRep chain = ch;
  for (int i = 1; i < depth; ++i) chain = compose(ch, compose(lam, chain));
  return chain;
}

// Deterministic post-processing scan used by amend_search_post and the
// post-square impossibility probe.  Evaluates Lambda . target for block
// rotations (adjacent pairing, plus the shifted pairing for d > 2) and, for
// qubits, the general 2x2 parameterization.  Stops at the first success.
AmendmentResult scan_post(AmendStrategy strategy, const AffineRep& target, int grid) {
  const int d = target.dim;
  const std::vector<double> alphas_all = rotation_angles(grid, false);
  std::vector<double> alphas;  // block rotations with sin(2a) = 0 cannot revive anything
  for (double a : alphas_all)
    if (std::abs(std::sin(2.0 * a)) > matrix_tol()) alphas.push_back(a);
  const std::vector<double> phases = phase_grid(grid);

  std::vector<int> starts{d % 2};
  if (d > 2) starts.push_back(1 - d % 2);

  AmendmentResult result;
  result.strategy = strategy;
  result.grid_total = static_cast<long>(starts.size()) * alphas.size();
  if (d == 2)
    result.grid_total += static_cast<long>(alphas.size()) * phases.size() * phases.size();

  for (int start : starts) {
    for (double a : alphas) {
      const BlockRotationPlan plan = BlockRotationPlan::adjacent(d, a, start);
      const Eigen::MatrixXcd u = block_rotation_unitary(plan);
      AmendmentResult cand = evaluate_candidate(strategy, compose(unitary_affine(u), target));
      ++result.scanned;
      if (cand.success) {
        cand.scanned = result.scanned;
        cand.grid_total = result.grid_total;
        cand.plan = plan;
        cand.unitary = u;
        return cand;
      }
    }
  }
  if (d == 2) {
    for (double a : alphas) {
      for (double a1 : phases) {
        for (double a2 : phases) {
          const UnitaryParams p{a, a1, a2, a1 + a2};
          const Eigen::MatrixXcd u = general_unitary(p);
          AmendmentResult cand =
              evaluate_candidate(strategy, compose(unitary_affine(u), target));
          ++result.scanned;
          if (cand.success) {
            cand.scanned = result.scanned;
            cand.grid_total = result.grid_total;
            cand.params = p;
            cand.unitary = u;
            return cand;
          }
        }
      }
    }
  }
  return result;  // exhausted: success = false, scanned = grid_total
}

}  // namespace

AmendmentResult amend_post(const AffineRep& ch, const Eigen::MatrixXcd& U) {
  if (!is_cbc_structural(ch).is_cbc)
    throw precondition_error("channel is not coherence breaking; nothing to amend");
  AmendmentResult r =
      evaluate_candidate(AmendStrategy::post, compose(unitary_affine(U), ch));
  r.unitary = U;
  r.scanned = 1;
  r.grid_total = 1;
  return r;
}

AmendmentResult amend_search_post(const AffineRep& ch, int grid) {
  if (!is_cbc_structural(ch).is_cbc)
    throw precondition_error("channel is not coherence breaking; nothing to amend");
  return scan_post(AmendStrategy::post, ch, grid);
}

AmendmentResult amend_interleaved(const AffineRep& ch, const Eigen::MatrixXcd& U) {
  AmendmentResult r = evaluate_candidate(
      AmendStrategy::interleaved, interleave_chain(ch, unitary_affine(U), 2));
  r.unitary = U;
  r.scanned = 1;
  r.grid_total = 1;
  return r;
}

AmendmentResult amend_search_interleaved(const AffineRep& ch, int grid, int depth) {
  if (depth < 2) throw precondition_error("interleaved amendment requires depth >= 2");
  const AmendStrategy strategy =
      depth == 2 ? AmendStrategy::interleaved : AmendStrategy::interleaved_general;
  const int d = ch.dim;
  // Rotation angles include 0 here: diagonal-phase unitaries (a = 0 with a
  // free phase) are exactly the candidates that revive two-step breaking.
  const std::vector<double> alphas = rotation_angles(grid, true);
  const std::vector<double> phases = phase_grid(grid);

  AmendmentResult result;
  result.strategy = strategy;

  if (d == 2) {
    result.grid_total =
        static_cast<long>(alphas.size()) * phases.size() * phases.size();
    for (double a : alphas) {
      for (double a1 : phases) {
        for (double a2 : phases) {
          const UnitaryParams p{a, a1, a2, a1 + a2};
          const Eigen::MatrixXcd u = general_unitary(p);
          AmendmentResult cand = evaluate_candidate(
              strategy, interleave_chain(ch, unitary_affine(u), depth));
          ++result.scanned;
          if (cand.success) {
            cand.scanned = result.scanned;
            cand.grid_total = result.grid_total;
            cand.params = p;
            cand.unitary = u;
            return cand;
          }
        }
      }
    }
    return result;
  }

  std::vector<int> starts{d % 2, 1 - d % 2};
  result.grid_total = static_cast<long>(starts.size()) * alphas.size();
  for (int start : starts) {
    for (double a : alphas) {
      const BlockRotationPlan plan = BlockRotationPlan::adjacent(d, a, start);
      const Eigen::MatrixXcd u = block_rotation_unitary(plan);
      AmendmentResult cand =
          evaluate_candidate(strategy, interleave_chain(ch, unitary_affine(u), depth));
      ++result.scanned;
      if (cand.success) {
        cand.scanned = result.scanned;
        cand.grid_total = result.grid_total;
        cand.plan = plan;
        cand.unitary = u;
        return cand;
      }
    }
  }
  return result;
}

AmendmentResult impossibility_post_square(const AffineRep& ch, int samples,
                                          std::uint64_t seed, int grid) {
  const AffineRep square = iterate(ch, 2);
  if (!is_cbc_structural(square).is_cbc)
    throw precondition_error("square of the channel is not coherence breaking");

  if (square.M.cwiseAbs().maxCoeff() <= matrix_tol() &&
      square.n.cwiseAbs().maxCoeff() <= matrix_tol()) {
    AmendmentResult r;
    r.strategy = AmendStrategy::post_square;
    r.success = false;
    r.certificate =
        "Phi^2 sends every state to the maximally mixed state, which is fixed "
        "by every unitary conjugation; no post-processing unitary can revive "
        "coherence";
    return r;
  }

  AmendmentResult r = scan_post(AmendStrategy::post_square, square, grid);
  if (r.success) return r;

  // Structured grid exhausted; try seeded random unitaries.
  r.grid_total += samples;
  for (int i = 0; i < samples; ++i) {
    const Eigen::MatrixXcd u = random_unitary(ch.dim, seed + static_cast<std::uint64_t>(i));
    AmendmentResult cand =
        evaluate_candidate(AmendStrategy::post_square, compose(unitary_affine(u), square));
    ++r.scanned;
    if (cand.success) {
      cand.scanned = r.scanned;
      cand.grid_total = r.grid_total;
      cand.unitary = u;
      return cand;
    }
  }
  return r;
}

Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("random_unitary requires dim >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

}  // namespace cobreak
