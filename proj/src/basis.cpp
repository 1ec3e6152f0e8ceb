#include "cobreak/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace cobreak {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

OperatorBasis::OperatorBasis(int dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("operator basis requires dim >= 2");
  elements_.reserve(static_cast<std::size_t>(dim) * dim - 1);
  // Off-diagonal elements, pair (j,k) with j < k: symmetric then antisymmetric.
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(dim, dim);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      elements_.push_back(sym);
      Eigen::MatrixXcd asym = Eigen::MatrixXcd::Zero(dim, dim);
      asym(j, k) = -kI;
      asym(k, j) = kI;
      elements_.push_back(asym);
    }
  }
  // Diagonal elements: sqrt(2/(l(l+1))) (sum_{j<l} |j><j| - l |l><l|).
  for (int l = 1; l < dim; ++l) {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(dim, dim);
    const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int j = 0; j < l; ++j) diag(j, j) = scale;
    diag(l, l) = -scale * l;
    elements_.push_back(diag);
  }
}

int OperatorBasis::pair_offset(int j, int k) const {
  if (j < 0 || k <= j || k >= dim_)
    throw std::invalid_argument("basis pair index out of range");
  // Pairs before (j,k) in lexicographic order.
  return j * dim_ - j * (j + 1) / 2 + (k - j - 1);
}

int OperatorBasis::sym_index(int j, int k) const { return 2 * pair_offset(j, k); }

int OperatorBasis::asym_index(int j, int k) const { return 2 * pair_offset(j, k) + 1; }

int OperatorBasis::diag_index(int l) const {
  if (l < 1 || l >= dim_) throw std::invalid_argument("diagonal basis index out of range");
  return offdiag_count() + (l - 1);
}

Eigen::VectorXcd OperatorBasis::expand(const Eigen::MatrixXcd& A) const {
  if (A.rows() != dim_ || A.cols() != dim_)
    throw std::invalid_argument("matrix dimension does not match basis");
  Eigen::VectorXcd a(size());
  for (int i = 0; i < size(); ++i) a(i) = (A * elements_[i]).trace();
  return a;
}

Eigen::MatrixXcd OperatorBasis::reconstruct(std::complex<double> trace,
                                            const Eigen::VectorXcd& a) const {
  if (a.size() != size())
    throw std::invalid_argument("coefficient vector length does not match basis");
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Identity(dim_, dim_) * (trace / static_cast<double>(dim_));
  for (int i = 0; i < size(); ++i) out += 0.5 * a(i) * elements_[i];
  return out;
}

}  // namespace cobreak
