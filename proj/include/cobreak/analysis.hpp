#pragma once

#include <optional>
#include <vector>

#include "cobreak/channel.hpp"
#include "cobreak/state.hpp"

namespace cobreak {

enum class CbcRoute { structural, oracle };

// A state whose image under the channel retains coherence.
struct Witness {
  DensityMatrix state;
  double output_c_l1 = 0.0;
};

struct CbcVerdict {
  bool is_cbc = false;
  CbcRoute route = CbcRoute::structural;
  // Present iff is_cbc is false; the probe state with maximal output coherence.
  std::optional<Witness> witness;
};

struct IndexResult {
  // Smallest k with Phi^k coherence breaking; empty when the cap was exceeded.
  std::optional<int> index;
  int cap = 16;
  // trail[i] = verdict for k = i+1; runs to the deciding k or to the cap.
  std::vector<bool> trail;
  // The index is meaningful for incoherent channels; set when the input fails is_nc.
  bool nc_warning = false;
};

// Incoherent-operation test on a Kraus decomposition: every column of every
// Kraus operator has at most one entry above tolerance.
bool is_incoherent_kraus(const KrausChannel& ch);

// Non-coherence-generating map: diagonal inputs give diagonal outputs.  In
// affine terms every off-diagonal-indexed row of M is zero on all
// diagonal-indexed columns, and the off-diagonal part of n is zero.
bool is_nc(const AffineRep& a);

// Coherence breaking via the affine zero pattern: all off-diagonal-indexed
// rows of M and off-diagonal entries of n vanish.
CbcVerdict is_cbc_structural(const AffineRep& a);

// Independent decision: evaluate the channel on the d^2 probe states
// (|j><j|, (|j>+|k>)/sqrt2, (|j>+i|k>)/sqrt2) that span operator space and
// test every output for residual coherence.
CbcVerdict is_cbc_oracle(const AffineRep& a);
CbcVerdict is_cbc_oracle(const KrausChannel& ch);

// The d^2 probe states used by the oracle.
std::vector<DensityMatrix> coherence_probe_states(int dim);

// Smallest k <= cap with Phi^k coherence breaking.
IndexResult cbc_index(const AffineRep& a, int cap = 16);

// Closed-form parameter criteria for the two families (tolerance 1e-12).
// Each throws std::invalid_argument when handed the wrong family.
bool family1_cbc(const NCFamilyParams& p);     // cos(theta) = 0
bool family2_cbc(const NCFamilyParams& p);     // (sin t, cos p) = 0 or (cos t, sin p) = 0
bool family1_index2(const NCFamilyParams& p);  // cos(2 phi) = 0, sin(theta) = 0, cos(xi - eta) = 0
bool family2_index2(const NCFamilyParams& p);  // cos(xi) = 0 and exactly one of cos(theta -+ phi) = 0

}  // namespace cobreak
