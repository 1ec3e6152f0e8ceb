#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace cobreak {

// Hermitian operator basis {X_i} for a d-dimensional system, tr(X_i X_j) = 2 d_ij.
//
// Ordering: for each index pair j<k (lexicographic) the symmetric element
// |j><k| + |k><j| followed by the antisymmetric -i|j><k| + i|k><j|, then the
// diagonal elements sqrt(2/(l(l+1))) (sum_{j<l} |j><j| - l|l><l|) for l = 1..d-1.
// For d = 2 this is exactly (sigma_x, sigma_y, sigma_z).
//
// Expansion convention: A = tr(A) I/d + (1/2) sum_i a_i X_i with a_i = tr(A X_i).
class OperatorBasis {
 public:
  explicit OperatorBasis(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }  // d^2 - 1
  const Eigen::MatrixXcd& operator[](int i) const { return elements_.at(i); }

  // Index of the symmetric / antisymmetric element for the pair (j, k), j < k.
  int sym_index(int j, int k) const;
  int asym_index(int j, int k) const;
  // Index of the l-th diagonal element, l = 1..d-1.
  int diag_index(int l) const;
  // The first d^2-d components are indexed by off-diagonal elements; the
  // remaining d-1 by diagonal ones.
  int offdiag_count() const { return dim_ * dim_ - dim_; }

  // Coefficients a_i = tr(A X_i); A need not be Hermitian, so the result is complex.
  Eigen::VectorXcd expand(const Eigen::MatrixXcd& A) const;
  // trace * I/d + (1/2) sum_i a_i X_i.
  Eigen::MatrixXcd reconstruct(std::complex<double> trace, const Eigen::VectorXcd& a) const;

 private:
  int pair_offset(int j, int k) const;

  int dim_;
  std::vector<Eigen::MatrixXcd> elements_;
};

}  // namespace cobreak
