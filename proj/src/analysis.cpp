#include "cobreak/analysis.hpp"

#include <cmath>
#include <functional>

#include "cobreak/basis.hpp"
#include "cobreak/common.hpp"

namespace cobreak {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Probe outputs are raw matrices so that slightly unphysical maps can still
// be scored; coherence is read off with l1_offdiag.
Witness best_witness(int dim,
                     const std::function<Eigen::MatrixXcd(const DensityMatrix&)>& evaluate) {
  const std::vector<DensityMatrix> probes = coherence_probe_states(dim);
  double best = -1.0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double c = l1_offdiag(evaluate(probes[i]));
    if (c > best) {
      best = c;
      best_idx = i;
    }
  }
  return Witness{probes[best_idx], best};
}

bool near_zero(double x) { return std::abs(x) <= kParamTol; }

// "Nonzero" clauses of the parametric criteria use a looser threshold so a
// numerically degenerate channel is not classified as index 2.
constexpr double kNonzeroTol = 1e-9;

void require_family(const NCFamilyParams& p, int family) {
  if (p.family != family)
    throw std::invalid_argument("criterion applies to family " + std::to_string(family));
}

}  // namespace

std::vector<DensityMatrix> coherence_probe_states(int dim) {
  std::vector<DensityMatrix> probes;
  probes.reserve(static_cast<std::size_t>(dim) * dim);
  for (int j = 0; j < dim; ++j) {
    Eigen::VectorXcd basis_ket = Eigen::VectorXcd::Zero(dim);
    basis_ket(j) = 1.0;
    probes.push_back(DensityMatrix::pure(basis_ket));
  }
  // (|j> + |k>)/sqrt2 and (|j> + i|k>)/sqrt2 complete a spanning family:
  // every matrix unit |j><k| is a linear combination of these d^2 projectors.
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(dim);
      plus(j) = 1.0;
      plus(k) = 1.0;
      probes.push_back(DensityMatrix::pure(plus));
      Eigen::VectorXcd plus_i = Eigen::VectorXcd::Zero(dim);
      plus_i(j) = 1.0;
      plus_i(k) = kI;
      probes.push_back(DensityMatrix::pure(plus_i));
    }
  }
  return probes;
}

bool is_incoherent_kraus(const KrausChannel& ch) {
  for (const auto& k : ch.kraus()) {
    for (Eigen::Index col = 0; col < k.cols(); ++col) {
      int above = 0;
      for (Eigen::Index row = 0; row < k.rows(); ++row)
        if (std::abs(k(row, col)) > matrix_tol()) ++above;
      if (above > 1) return false;
    }
  }
  return true;
}

bool is_nc(const AffineRep& a) {
  const int off = a.dim * a.dim - a.dim;
  const int m = a.dim * a.dim - 1;
  for (int i = 0; i < off; ++i) {
    if (std::abs(a.n(i)) > matrix_tol()) return false;
    for (int j = off; j < m; ++j)
      if (std::abs(a.M(i, j)) > matrix_tol()) return false;
  }
  return true;
}

CbcVerdict is_cbc_structural(const AffineRep& a) {
  const int off = a.dim * a.dim - a.dim;
  bool cbc = true;
  for (int i = 0; i < off && cbc; ++i) {
    if (std::abs(a.n(i)) > matrix_tol()) cbc = false;
    for (int j = 0; j < a.M.cols() && cbc; ++j)
      if (std::abs(a.M(i, j)) > matrix_tol()) cbc = false;
  }
  CbcVerdict v{cbc, CbcRoute::structural, std::nullopt};
  if (!cbc)
    v.witness = best_witness(
        a.dim, [&](const DensityMatrix& rho) { return affine_evaluate(a, rho.matrix()); });
  return v;
}

namespace {

CbcVerdict oracle_over_probes(
    int dim, const std::function<Eigen::MatrixXcd(const DensityMatrix&)>& evaluate) {
  const Witness w = best_witness(dim, evaluate);
  CbcVerdict v{w.output_c_l1 <= matrix_tol(), CbcRoute::oracle, std::nullopt};
  if (!v.is_cbc) v.witness = w;
  return v;
}

}  // namespace

CbcVerdict is_cbc_oracle(const AffineRep& a) {
  return oracle_over_probes(
      a.dim, [&](const DensityMatrix& rho) { return affine_evaluate(a, rho.matrix()); });
}

CbcVerdict is_cbc_oracle(const KrausChannel& ch) {
  return oracle_over_probes(ch.dim(), [&](const DensityMatrix& rho) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(ch.dim(), ch.dim());
    for (const auto& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
    return out;
  });
}

IndexResult cbc_index(const AffineRep& a, int cap) {
  if (cap < 1) throw std::invalid_argument("cbc_index cap must be >= 1");
  IndexResult r;
  r.cap = cap;
  r.nc_warning = !is_nc(a);
  AffineRep power = a;
  for (int k = 1; k <= cap; ++k) {
    if (k > 1) power = compose(a, power);
    const bool cbc = is_cbc_structural(power).is_cbc;
    r.trail.push_back(cbc);
    if (cbc) {
      r.index = k;
      return r;
    }
  }
  return r;  // index empty: exceeds cap
}

bool family1_cbc(const NCFamilyParams& p) {
  require_family(p, 1);
  return near_zero(std::cos(p.theta));
}

bool family2_cbc(const NCFamilyParams& p) {
  require_family(p, 2);
  return (near_zero(std::sin(p.theta)) && near_zero(std::cos(p.phi))) ||
         (near_zero(std::cos(p.theta)) && near_zero(std::sin(p.phi)));
}

bool family1_index2(const NCFamilyParams& p) {
  require_family(p, 1);
  return near_zero(std::cos(2.0 * p.phi)) && near_zero(std::sin(p.theta)) &&
         near_zero(std::cos(p.xi - p.eta));
}

bool family2_index2(const NCFamilyParams& p) {
  require_family(p, 2);
  const double c_minus = std::cos(p.theta - p.phi);
  const double c_plus = std::cos(p.theta + p.phi);
  // The xy block of the transfer matrix is
  //   [[cos(xi) c_minus, -sin(xi) c_plus], [sin(xi) c_minus, cos(xi) c_plus]]
  // with trace cos(xi)(c_minus + c_plus) and determinant c_minus * c_plus, so
  // it is nilpotent and nonzero exactly when cos(xi) = 0 and one cosine
  // vanishes while the other does not.
  if (!near_zero(std::cos(p.xi))) return false;
  return (near_zero(c_minus) && std::abs(c_plus) > kNonzeroTol) ||
         (near_zero(c_plus) && std::abs(c_minus) > kNonzeroTol);
}

}  // namespace cobreak
