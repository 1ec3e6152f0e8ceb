#pragma once

#include <Eigen/Dense>

#include <vector>

#include "cobreak/state.hpp"

namespace cobreak {

// Channel in Kraus form: rho -> sum_i K_i rho K_i^dag.
// Completeness sum_i K_i^dag K_i = I is validated on construction.
class KrausChannel {
 public:
  KrausChannel(int dim, std::vector<Eigen::MatrixXcd> kraus);

  int dim() const { return dim_; }
  const std::vector<Eigen::MatrixXcd>& kraus() const { return kraus_; }

 private:
  int dim_;
  std::vector<Eigen::MatrixXcd> kraus_;
};

// Action of a channel on coherence vectors: b -> M b + n.  The leading row of
// the full transfer matrix is (1, 0) for any trace-preserving map, so only
// the (d^2-1) x (d^2-1) block M and the offset n are stored.
struct AffineRep {
  AffineRep(int dim, Eigen::MatrixXd M, Eigen::VectorXd n);

  int dim;
  Eigen::MatrixXd M;
  Eigen::VectorXd n;
};

// Parameters of the two qubit nonunital-channel families used throughout.
// Family 1 uses all four angles; family 2 ignores eta.
struct NCFamilyParams {
  int family = 1;
  double theta = 0.0;
  double phi = 0.0;
  double xi = 0.0;
  double eta = 0.0;
};

struct ChoiMatrix {
  int dim = 0;
  Eigen::MatrixXcd J;  // d^2 x d^2, block (j,k) = channel applied to |j><k|
};

struct CptpVerdict {
  bool cp = false;
  bool tp = false;
  double min_eigenvalue = 0.0;  // smallest eigenvalue of the Choi matrix
  double herm_deviation = 0.0;  // max |J - J^dag| entry
  double tp_deviation = 0.0;    // max deviation of the input-side marginal from I
};

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// Kraus operators of family 1 / family 2 at the given angles.
KrausChannel nc_family_channel(const NCFamilyParams& p);

// M_ij = (1/2) tr(X_i Phi(X_j)), n_i = tr(X_i Phi(I/d)).  Throws
// consistency_error if the map fails to be trace-preserving or produces
// non-Hermitian images of Hermitian inputs.
AffineRep kraus_to_affine(const KrausChannel& ch);

// Unique linear extension of the affine action to arbitrary (non-state)
// matrices: A -> tr(A) (I/d + (1/2) sum n_i X_i) + (1/2) sum (M a)_i X_i.
Eigen::MatrixXcd affine_evaluate(const AffineRep& a, const Eigen::MatrixXcd& A);

// Affine action on a state; throws std::domain_error if the output fails PSD.
DensityMatrix affine_apply(const AffineRep& a, const DensityMatrix& rho);

// Composition outer . inner: (M2 M1, M2 n1 + n2).
AffineRep compose(const AffineRep& outer, const AffineRep& inner);

// k-fold self-composition, k >= 1: (M^k, (sum_{i<k} M^i) n).
AffineRep iterate(const AffineRep& a, int k);

AffineRep identity_affine(int dim);

ChoiMatrix choi(const KrausChannel& ch);
ChoiMatrix choi(const AffineRep& a);

CptpVerdict validate_cptp(const KrausChannel& ch);
CptpVerdict validate_cptp(const AffineRep& a);

// Single-Kraus channel rho -> U rho U^dag; rejects non-unitary U.
KrausChannel unitary_channel(const Eigen::MatrixXcd& U);

}  // namespace cobreak
