#include "cobreak/state.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cobreak/basis.hpp"
#include "cobreak/common.hpp"

namespace cobreak {

namespace {

void check_state(int dim, const Eigen::MatrixXcd& rho) {
  if (dim < 2) throw std::invalid_argument("density matrix requires dim >= 2");
  if (rho.rows() != dim || rho.cols() != dim) {
    std::ostringstream msg;
    msg << "density matrix shape " << rho.rows() << "x" << rho.cols()
        << " does not match dim " << dim;
    throw std::invalid_argument(msg.str());
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (deviation " << herm << ")";
    throw std::invalid_argument(msg.str());
  }
  const double tr_dev = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  if (tr_dev > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace differs from 1 by " << tr_dev;
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPsdFloor) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (eigenvalue " << min_eig << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(int dim, Eigen::MatrixXcd rho)
    : dim_(dim), rho_(std::move(rho)) {
  check_state(dim_, rho_);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(dim, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& ket) {
  const double norm = ket.norm();
  if (norm < 1e-12) throw std::invalid_argument("cannot normalize a zero ket");
  const Eigen::VectorXcd v = ket / norm;
  return DensityMatrix(static_cast<int>(v.size()), v * v.adjoint());
}

double l1_offdiag(const Eigen::MatrixXcd& m) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) sum += std::abs(m(i, j));
  return sum;
}

double c_l1(const DensityMatrix& rho) { return l1_offdiag(rho.matrix()); }

DensityMatrix dephase(const DensityMatrix& rho) {
  return DensityMatrix(rho.dim(),
                       rho.matrix().diagonal().asDiagonal().toDenseMatrix());
}

CoherenceVector to_coherence_vector(const DensityMatrix& rho) {
  const OperatorBasis basis(rho.dim());
  const Eigen::VectorXcd a = basis.expand(rho.matrix());
  // tr(rho X_i) is real for Hermitian rho and Hermitian X_i.
  CoherenceVector v{rho.dim(), a.real()};
  return v;
}

DensityMatrix from_coherence_vector(const CoherenceVector& v) {
  const OperatorBasis basis(v.dim);
  if (v.b.size() != basis.size())
    throw std::invalid_argument("coherence vector length does not match dim^2 - 1");
  const Eigen::MatrixXcd rho = basis.reconstruct(1.0, v.b.cast<std::complex<double>>());
  try {
    return DensityMatrix(v.dim, rho);
  } catch (const std::invalid_argument& e) {
    // Reconstruction from an arbitrary vector can land outside the state set.
    throw std::domain_error(std::string("coherence vector is not a state: ") + e.what());
  }
}

DensityMatrix random_state(int dim, std::uint64_t seed, StateKind kind) {
  if (dim < 2) throw std::invalid_argument("random_state requires dim >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  if (kind == StateKind::pure) {
    Eigen::VectorXcd ket(dim);
    for (int i = 0; i < dim; ++i) ket(i) = std::complex<double>(gauss(rng), gauss(rng));
    return DensityMatrix::pure(ket);
  }

  // Mixed: spectrum uniform on the simplex, eigenbasis from a QR-orthonormalized
  // Gaussian matrix.
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd spectrum(dim);
  for (int i = 0; i < dim; ++i) spectrum(i) = expo(rng);
  spectrum /= spectrum.sum();

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
  const Eigen::MatrixXcd rho = q * spectrum.asDiagonal() * q.adjoint();
  return DensityMatrix(dim, 0.5 * (rho + rho.adjoint()));
}

}  // namespace cobreak
