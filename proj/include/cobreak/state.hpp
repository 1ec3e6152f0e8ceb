#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace cobreak {

// Coefficients b_i = tr(rho X_i) of a state in the operator basis, so that
// rho = I/d + (1/2) sum_i b_i X_i.  For d = 2 this is the Bloch vector.
struct CoherenceVector {
  int dim = 0;
  Eigen::VectorXd b;  // length d^2 - 1, OperatorBasis ordering
};

// d x d density operator: Hermitian, unit trace, positive semidefinite.
// Validated on construction; immutable afterwards.
class DensityMatrix {
 public:
  DensityMatrix(int dim, Eigen::MatrixXcd rho);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix pure(const Eigen::VectorXcd& ket);

  int dim() const { return dim_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

 private:
  int dim_;
  Eigen::MatrixXcd rho_;
};

enum class StateKind { pure, mixed };

// Sum of the magnitudes of all off-diagonal entries.  No state validation,
// so it can score raw channel outputs as well.
double l1_offdiag(const Eigen::MatrixXcd& m);

// l1 coherence measure: sum_{i != j} |rho_ij|.  Zero exactly on diagonal states.
double c_l1(const DensityMatrix& rho);

// Complete dephasing: keep the diagonal, zero the rest.
DensityMatrix dephase(const DensityMatrix& rho);

CoherenceVector to_coherence_vector(const DensityMatrix& rho);
// Inverse of to_coherence_vector; throws std::domain_error when the
// reconstructed operator is not positive semidefinite within tolerance.
DensityMatrix from_coherence_vector(const CoherenceVector& v);

// Deterministic pseudo-random states: pure = normalized complex Gaussian ket,
// mixed = random spectrum on the simplex conjugated by a Haar-ish unitary.
DensityMatrix random_state(int dim, std::uint64_t seed, StateKind kind);

}  // namespace cobreak
