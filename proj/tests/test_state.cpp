#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

#include "cobreak/basis.hpp"
#include "cobreak/state.hpp"

using namespace cobreak;
using Cx = std::complex<double>;

namespace {

Eigen::MatrixXcd plus_state() {
  Eigen::MatrixXcd rho(2, 2);
  rho << 0.5, 0.5, 0.5, 0.5;
  return rho;
}

}  // namespace

TEST_CASE("construction validates the state invariants") {
  CHECK_NOTHROW(DensityMatrix(2, plus_state()));

  Eigen::MatrixXcd nonherm(2, 2);
  nonherm << 0.5, Cx(0.1, 0.2), Cx(0.1, 0.3), 0.5;
  CHECK_THROWS_WITH_AS(DensityMatrix(2, nonherm),
                       doctest::Contains("Hermitian"), std::invalid_argument);

  Eigen::MatrixXcd offtrace = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_WITH_AS(DensityMatrix(2, offtrace), doctest::Contains("trace"),
                       std::invalid_argument);

  Eigen::MatrixXcd negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_WITH_AS(DensityMatrix(2, negative),
                       doctest::Contains("positive semidefinite"), std::invalid_argument);

  CHECK_THROWS_AS(DensityMatrix(3, plus_state()), std::invalid_argument);
}

TEST_CASE("l1 coherence on pinned states") {
  CHECK(c_l1(DensityMatrix(2, plus_state())) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c_l1(DensityMatrix::maximally_mixed(3)) == doctest::Approx(0.0));

  Eigen::MatrixXcd partial(2, 2);
  partial << 0.5, 0.3, 0.3, 0.5;
  CHECK(c_l1(DensityMatrix(2, partial)) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("dephasing kills coherence and keeps populations") {
  const DensityMatrix rho(2, plus_state());
  const DensityMatrix out = dephase(rho);
  CHECK(c_l1(out) == doctest::Approx(0.0));
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(out.matrix()(1, 1).real() == doctest::Approx(0.5));

  for (int d : {2, 3, 4})
    for (int s = 0; s < 25; ++s)
      CHECK(c_l1(dephase(random_state(d, 1000 + s, StateKind::mixed))) <= 1e-12);
}

TEST_CASE("coherence vector of qubit states is the Bloch vector") {
  Eigen::MatrixXcd rho(2, 2);
  rho << 0.5, 0.4, 0.4, 0.5;  // I/2 + 0.4 sigma_x
  const CoherenceVector v = to_coherence_vector(DensityMatrix(2, rho));
  CHECK(v.b(0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(v.b(1) == doctest::Approx(0.0));
  CHECK(v.b(2) == doctest::Approx(0.0));

  const CoherenceVector mixed = to_coherence_vector(DensityMatrix::maximally_mixed(2));
  CHECK(mixed.b.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("coherence vector of a qutrit basis state") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3, 3);
  rho(0, 0) = 1.0;
  const CoherenceVector v = to_coherence_vector(DensityMatrix(3, rho));

  // Independent oracle: trace against freshly built basis elements.
  const OperatorBasis basis(3);
  for (int i = 0; i < basis.size(); ++i) {
    const double expected = (rho * basis[i]).trace().real();
    CHECK(v.b(i) == doctest::Approx(expected).epsilon(1e-13));
  }
  // Frozen values: no overlap with the pair elements, diagonal components
  // 1 and 1/sqrt(3).
  for (int i = 0; i < 6; ++i) CHECK(std::abs(v.b(i)) < 1e-14);
  CHECK(v.b(6) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(v.b(7) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("coherence vector round trip") {
  for (int d : {2, 3, 4}) {
    for (int s = 0; s < 50; ++s) {
      const DensityMatrix rho =
          random_state(d, 7000 + s, s % 2 ? StateKind::pure : StateKind::mixed);
      const DensityMatrix back = from_coherence_vector(to_coherence_vector(rho));
      CHECK((rho.matrix() - back.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("qubit coherence vectors stay inside the Bloch ball") {
  for (int s = 0; s < 100; ++s) {
    const DensityMatrix rho =
        random_state(2, 31 * s + 5, s % 2 ? StateKind::pure : StateKind::mixed);
    CHECK(to_coherence_vector(rho).b.norm() <= 1.0 + 1e-9);
  }
}

TEST_CASE("vectors outside the state set are rejected") {
  CoherenceVector v{2, Eigen::Vector3d(0.0, 0.0, 1.2)};
  CHECK_THROWS_AS(from_coherence_vector(v), std::domain_error);

  CoherenceVector bad_len{2, Eigen::VectorXd::Zero(5)};
  CHECK_THROWS_AS(from_coherence_vector(bad_len), std::invalid_argument);
}

TEST_CASE("coherence is invariant under diagonal unitaries") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * 3.141592653589793);
  for (int d : {2, 3}) {
    for (int s = 0; s < 20; ++s) {
      const DensityMatrix rho = random_state(d, 400 + s, StateKind::mixed);
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
      for (int j = 0; j < d; ++j) u(j, j) = std::exp(Cx(0.0, unif(rng)));
      const Eigen::MatrixXcd rotated = u * rho.matrix() * u.adjoint();
      CHECK(l1_offdiag(rotated) == doctest::Approx(c_l1(rho)).epsilon(1e-12));
    }
  }
}

TEST_CASE("l1 coherence is convex") {
  for (int s = 0; s < 30; ++s) {
    const DensityMatrix a = random_state(3, 80 + s, StateKind::mixed);
    const DensityMatrix b = random_state(3, 180 + s, StateKind::pure);
    const double lam = (s + 1) / 32.0;
    const Eigen::MatrixXcd mix = lam * a.matrix() + (1.0 - lam) * b.matrix();
    CHECK(l1_offdiag(mix) <= lam * c_l1(a) + (1.0 - lam) * c_l1(b) + 1e-12);
  }
}

TEST_CASE("random states are deterministic in the seed") {
  const DensityMatrix a = random_state(3, 1234, StateKind::mixed);
  const DensityMatrix b = random_state(3, 1234, StateKind::mixed);
  CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);

  const DensityMatrix p = random_state(4, 77, StateKind::pure);
  CHECK(std::abs((p.matrix() * p.matrix()).trace().real() - 1.0) < 1e-12);  // purity

  const DensityMatrix c = random_state(3, 1235, StateKind::mixed);
  CHECK((a.matrix() - c.matrix()).cwiseAbs().maxCoeff() > 1e-3);
}
