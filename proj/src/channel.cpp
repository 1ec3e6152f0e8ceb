#include "cobreak/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cobreak/basis.hpp"
#include "cobreak/common.hpp"

namespace cobreak {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Eigen::MatrixXcd apply_kraus(const std::vector<Eigen::MatrixXcd>& ks,
                             const Eigen::MatrixXcd& A) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(A.rows(), A.cols());
  for (const auto& k : ks) out += k * A * k.adjoint();
  return out;
}

// |j><k| on a d-dimensional space.
Eigen::MatrixXcd matrix_unit(int dim, int j, int k) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
  e(j, k) = 1.0;
  return e;
}

}  // namespace

KrausChannel::KrausChannel(int dim, std::vector<Eigen::MatrixXcd> kraus)
    : dim_(dim), kraus_(std::move(kraus)) {
  if (dim < 2) throw std::invalid_argument("channel requires dim >= 2");
  if (kraus_.empty()) throw std::invalid_argument("channel requires at least one Kraus operator");
  for (std::size_t i = 0; i < kraus_.size(); ++i) {
    if (kraus_[i].rows() != dim || kraus_[i].cols() != dim) {
      std::ostringstream msg;
      msg << "Kraus operator " << i << " has shape " << kraus_[i].rows() << "x"
          << kraus_[i].cols() << ", expected " << dim << "x" << dim;
      throw std::invalid_argument(msg.str());
    }
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  const double dev = (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dev > matrix_tol()) {
    std::ostringstream msg;
    msg << "Kraus completeness violated: max |sum K^dag K - I| = " << dev;
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim())
    throw std::invalid_argument("state dimension does not match channel");
  Eigen::MatrixXcd out = apply_kraus(ch.kraus(), rho.matrix());
  return DensityMatrix(ch.dim(), 0.5 * (out + out.adjoint()));
}

KrausChannel nc_family_channel(const NCFamilyParams& p) {
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double cp = std::cos(p.phi), sp = std::sin(p.phi);
  const std::complex<double> exi = std::exp(kI * p.xi);

  Eigen::MatrixXcd k1(2, 2), k2(2, 2);
  if (p.family == 1) {
    const std::complex<double> eeta = std::exp(kI * p.eta);
    k1 << eeta * ct * cp, 0.0,
        -st * sp, exi * cp;
    k2 << st * cp, exi * sp,
        (1.0 / eeta) * ct * sp, 0.0;
  } else if (p.family == 2) {
    k1 << ct, 0.0,
        0.0, exi * cp;
    k2 << 0.0, sp,
        exi * st, 0.0;
  } else {
    throw std::invalid_argument("family must be 1 or 2");
  }
  return KrausChannel(2, {k1, k2});
}

AffineRep::AffineRep(int dim_in, Eigen::MatrixXd M_in, Eigen::VectorXd n_in)
    : dim(dim_in), M(std::move(M_in)), n(std::move(n_in)) {
  if (dim < 2) throw std::invalid_argument("affine representation requires dim >= 2");
  const int m = dim * dim - 1;
  if (M.rows() != m || M.cols() != m || n.size() != m) {
    std::ostringstream msg;
    msg << "affine blocks must be " << m << "x" << m << " and length " << m << ", got M "
        << M.rows() << "x" << M.cols() << ", n " << n.size();
    throw std::invalid_argument(msg.str());
  }
}

AffineRep kraus_to_affine(const KrausChannel& ch) {
  const int d = ch.dim();
  const OperatorBasis basis(d);
  const int m = basis.size();
  Eigen::MatrixXd M(m, m);
  Eigen::VectorXd n(m);

  // Offset: image of the maximally mixed state.
  const Eigen::MatrixXcd phi_id =
      apply_kraus(ch.kraus(), Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
  if (std::abs(phi_id.trace() - 1.0) > matrix_tol())
    throw consistency_error("channel does not preserve trace on I/d");
  for (int i = 0; i < m; ++i) {
    const std::complex<double> t = (basis[i] * phi_id).trace();
    if (std::abs(t.imag()) > matrix_tol())
      throw consistency_error("non-real coefficient in affine offset");
    n(i) = t.real();
  }

  // Linear block: M_ij = (1/2) tr(X_i Phi(X_j)).  Traceless inputs must stay
  // traceless, which is the (1, 0) leading row of the full transfer matrix.
  for (int j = 0; j < m; ++j) {
    const Eigen::MatrixXcd phi_xj = apply_kraus(ch.kraus(), basis[j]);
    if (std::abs(phi_xj.trace()) > matrix_tol())
      throw consistency_error("channel does not preserve trace on a basis element");
    for (int i = 0; i < m; ++i) {
      const std::complex<double> t = 0.5 * (basis[i] * phi_xj).trace();
      if (std::abs(t.imag()) > matrix_tol())
        throw consistency_error("non-real coefficient in affine block");
      M(i, j) = t.real();
    }
  }
  return AffineRep(d, std::move(M), std::move(n));
}

Eigen::MatrixXcd affine_evaluate(const AffineRep& a, const Eigen::MatrixXcd& A) {
  const OperatorBasis basis(a.dim);
  if (A.rows() != a.dim || A.cols() != a.dim)
    throw std::invalid_argument("matrix dimension does not match channel");
  const std::complex<double> t = A.trace();
  const Eigen::VectorXcd coeff = basis.expand(A);
  // Linearity: the traceless part transforms by M, the trace part carries n.
  const Eigen::VectorXcd out =
      (a.M * coeff.real()).cast<std::complex<double>>() +
      kI * (a.M * coeff.imag()).cast<std::complex<double>>() +
      t * a.n.cast<std::complex<double>>();
  return basis.reconstruct(t, out);
}

DensityMatrix affine_apply(const AffineRep& a, const DensityMatrix& rho) {
  if (rho.dim() != a.dim)
    throw std::invalid_argument("state dimension does not match channel");
  const CoherenceVector v = to_coherence_vector(rho);
  CoherenceVector out{a.dim, a.M * v.b + a.n};
  try {
    return from_coherence_vector(out);
  } catch (const std::domain_error& e) {
    throw std::domain_error(std::string("affine image is not a state: ") + e.what());
  }
}

AffineRep compose(const AffineRep& outer, const AffineRep& inner) {
  if (outer.dim != inner.dim)
    throw std::invalid_argument("cannot compose channels of different dimension");
  return AffineRep(outer.dim, outer.M * inner.M, outer.M * inner.n + outer.n);
}

AffineRep iterate(const AffineRep& a, int k) {
  if (k < 1) throw std::invalid_argument("iterate requires k >= 1");
  AffineRep acc = a;
  for (int i = 1; i < k; ++i) acc = compose(a, acc);
  return acc;
}

AffineRep identity_affine(int dim) {
  const int m = dim * dim - 1;
  return AffineRep(dim, Eigen::MatrixXd::Identity(m, m), Eigen::VectorXd::Zero(m));
}

namespace {

template <typename Evaluate>
ChoiMatrix choi_impl(int d, Evaluate&& phi) {
  Eigen::MatrixXcd J(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      J.block(j * d, k * d, d, d) = phi(matrix_unit(d, j, k));
  return ChoiMatrix{d, std::move(J)};
}

CptpVerdict verdict_from_choi(const ChoiMatrix& c) {
  const int d = c.dim;
  CptpVerdict v;
  v.herm_deviation = (c.J - c.J.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (c.J + c.J.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  v.cp = v.min_eigenvalue >= -kPsdFloor && v.herm_deviation <= matrix_tol();

  // Tracing out the output factor must leave the identity on the input copy.
  Eigen::MatrixXcd marginal(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) marginal(j, k) = c.J.block(j * d, k * d, d, d).trace();
  v.tp_deviation = (marginal - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  v.tp = v.tp_deviation <= matrix_tol();
  return v;
}

}  // namespace

ChoiMatrix choi(const KrausChannel& ch) {
  return choi_impl(ch.dim(),
                   [&](const Eigen::MatrixXcd& e) { return apply_kraus(ch.kraus(), e); });
}

ChoiMatrix choi(const AffineRep& a) {
  return choi_impl(a.dim, [&](const Eigen::MatrixXcd& e) { return affine_evaluate(a, e); });
}

CptpVerdict validate_cptp(const KrausChannel& ch) { return verdict_from_choi(choi(ch)); }

CptpVerdict validate_cptp(const AffineRep& a) { return verdict_from_choi(choi(a)); }

KrausChannel unitary_channel(const Eigen::MatrixXcd& U) {
  if (U.rows() != U.cols() || U.rows() < 2)
    throw std::invalid_argument("unitary must be square with dim >= 2");
  const int d = static_cast<int>(U.rows());
  const double dev =
      (U.adjoint() * U - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > matrix_tol()) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max |U^dag U - I| = " << dev;
    throw std::invalid_argument(msg.str());
  }
  return KrausChannel(d, {U});
}

}  // namespace cobreak
