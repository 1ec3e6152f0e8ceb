#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cobreak/analysis.hpp"
#include "cobreak/channel.hpp"

namespace cobreak {

// General 2x2 unitary  [[cos a, -e^{i a1} sin a], [e^{i a2} sin a, e^{i a3} cos a]].
// Whenever sin(2a) != 0 unitarity forces a3 = a1 + a2 (mod 2 pi); the
// constructor enforces that constraint.
struct UnitaryParams {
  double alpha = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
};

// Direct sum of 2x2 rotations R(alpha) on disjoint index pairs; indices in
// `fixed` are left untouched.  adjacent(d, alpha, start) pairs
// (start, start+1), (start+2, start+3), ... and fixes the rest, matching the
// construction used for coherence revival by a single rotation angle.
struct BlockRotationPlan {
  int dim = 0;
  double alpha = 0.0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> fixed;

  static BlockRotationPlan adjacent(int dim, double alpha, int start = 0);
};

enum class AmendStrategy { post, interleaved, post_square, interleaved_general };

struct AmendmentResult {
  AmendStrategy strategy = AmendStrategy::post;
  bool success = false;
  // Parameters of the winning candidate, when it came from a parameterized scan.
  std::optional<UnitaryParams> params;
  std::optional<BlockRotationPlan> plan;
  // The amending unitary itself (empty when no candidate succeeded).
  Eigen::MatrixXcd unitary;
  // Probe state whose amended image retains coherence.
  std::optional<Witness> witness;
  long scanned = 0;     // candidates actually evaluated
  long grid_total = 0;  // candidates the full scan would evaluate
  // Analytic explanation when failure is provable rather than exhausted.
  std::string certificate;
};

Eigen::MatrixXcd general_unitary(const UnitaryParams& p);

// Coherence-vector transfer matrix of conjugation by the 2x2 unitary,
// N_ij = (1/2) tr(sigma_i U sigma_j U^dag); real orthogonal.
Eigen::Matrix3d transfer_matrix_of_unitary(const UnitaryParams& p);

Eigen::MatrixXcd block_rotation_unitary(const BlockRotationPlan& plan);

// Post-processing amendment Lambda . Phi for one unitary.  Requires ch to be
// coherence breaking ("nothing to amend" otherwise).
AmendmentResult amend_post(const AffineRep& ch, const Eigen::MatrixXcd& U);

// Deterministic scan over block-rotation plans (adjacent pairing plus, for
// d > 2, the pairing shifted by one) with angles k pi / grid, k = 1..grid,
// skipping sin(2 alpha) = 0; for d = 2 additionally the general 2x2
// parameterization over a phase grid.  Stops at the first success.
AmendmentResult amend_search_post(const AffineRep& ch, int grid = 8);

// Interleaved amendment Phi . Lambda . Phi for one unitary.
AmendmentResult amend_interleaved(const AffineRep& ch, const Eigen::MatrixXcd& U);

// Scan for Phi . Lambda . ... . Lambda . Phi with `depth` copies of Phi and
// the same Lambda at every slot; depth >= 2.
AmendmentResult amend_search_interleaved(const AffineRep& ch, int grid = 8, int depth = 2);

// Tests whether any unitary placed after Phi^2 can revive coherence.  Requires
// Phi^2 to be coherence breaking.  When Phi^2 is the totally depolarizing map
// the impossibility is analytic and reported via `certificate` without
// scanning; otherwise the structured grid plus `samples` seeded random
// unitaries are tried.
AmendmentResult impossibility_post_square(const AffineRep& ch, int samples = 32,
                                          std::uint64_t seed = 1, int grid = 8);

// Haar-distributed unitary from a seeded Gaussian matrix and QR normalization.
Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed);

}  // namespace cobreak
