#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cobreak/basis.hpp"
#include "cobreak/channel.hpp"
#include "cobreak/common.hpp"
#include "test_channels.hpp"

using namespace cobreak;
using Cx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Random CPTP channel from a Haar-ish isometry: stack `ops` blocks of an
// orthonormalized Gaussian (ops*d) x d matrix.
KrausChannel random_channel(int dim, int ops, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(ops * dim, dim);
  for (int i = 0; i < ops * dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Cx(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  const Eigen::MatrixXcd v =
      Eigen::MatrixXcd(qr.householderQ()).leftCols(dim);  // isometry: v^dag v = I
  std::vector<Eigen::MatrixXcd> kraus;
  for (int b = 0; b < ops; ++b) kraus.push_back(v.block(b * dim, 0, dim, dim));
  return KrausChannel(dim, std::move(kraus));
}

NCFamilyParams params(int family, double theta, double phi, double xi, double eta = 0.0) {
  NCFamilyParams p;
  p.family = family;
  p.theta = theta;
  p.phi = phi;
  p.xi = xi;
  p.eta = eta;
  return p;
}

}  // namespace

TEST_CASE("Kraus construction validates completeness and shapes") {
  Eigen::MatrixXcd half = Eigen::MatrixXcd::Identity(2, 2) * std::sqrt(0.5);
  CHECK_THROWS_WITH_AS(KrausChannel(2, {half}), doctest::Contains("completeness"),
                       std::invalid_argument);
  CHECK_NOTHROW(KrausChannel(2, {half, half}));
  CHECK_THROWS_AS(KrausChannel(3, {half, half}), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel(2, std::vector<Eigen::MatrixXcd>{}), std::invalid_argument);
}

TEST_CASE("applying the identity channel is the identity") {
  const KrausChannel id(2, {Eigen::MatrixXcd::Identity(2, 2)});
  const DensityMatrix rho = random_state(2, 5, StateKind::mixed);
  CHECK((apply(id, rho).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("family pins: dephasing point and identity point") {
  // Family 1 at theta = pi/2, phi = 0: operators diag(0, e^{i xi}) and |0><0|.
  const double xi = 0.7;
  const KrausChannel f1 = nc_family_channel(params(1, kPi / 2, 0.0, xi, 0.3));
  CHECK(std::abs(f1.kraus()[0](0, 0)) < 1e-15);
  CHECK(std::abs(f1.kraus()[0](1, 1) - std::exp(Cx(0, xi))) < 1e-15);
  CHECK(std::abs(f1.kraus()[1](0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(f1.kraus()[1](1, 1)) < 1e-15);

  // It acts as complete dephasing: the maximally coherent state goes diagonal.
  Eigen::MatrixXcd plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const DensityMatrix out = apply(f1, DensityMatrix(2, plus));
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(out.matrix()(1, 1).real() == doctest::Approx(0.5));
  CHECK(c_l1(out) < 1e-14);

  // Family 2 at all-zero angles: the identity channel.
  const KrausChannel f2 = nc_family_channel(params(2, 0.0, 0.0, 0.0));
  CHECK((f2.kraus()[0] - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(f2.kraus()[1].cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("family operators satisfy completeness everywhere") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int family : {1, 2}) {
    for (int s = 0; s < 50; ++s) {
      const auto p = params(family, angle(rng), angle(rng), angle(rng), angle(rng));
      const KrausChannel ch = nc_family_channel(p);
      Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(2, 2);
      for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
      CHECK((sum - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  CHECK_THROWS_AS(nc_family_channel(params(3, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("affine form of pinned channels") {
  const KrausChannel id(2, {Eigen::MatrixXcd::Identity(2, 2)});
  const AffineRep a = kraus_to_affine(id);
  CHECK((a.M - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(a.n.cwiseAbs().maxCoeff() < 1e-12);

  // Complete dephasing in family 1: contraction onto the z axis.
  const AffineRep dephase_rep =
      kraus_to_affine(nc_family_channel(params(1, kPi / 2, 0.0, 0.0)));
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(2, 2) = 1.0;
  CHECK((dephase_rep.M - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(dephase_rep.n.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("family 1 affine entries match the closed forms") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int s = 0; s < 40; ++s) {
    const double t = angle(rng), ph = angle(rng), xi = angle(rng), eta = angle(rng);
    const AffineRep a = kraus_to_affine(nc_family_channel(params(1, t, ph, xi, eta)));
    const double ct = std::cos(t), st = std::sin(t);
    const double c2p = std::cos(2 * ph);
    CHECK(a.M(0, 0) == doctest::Approx(ct * (std::cos(eta) * std::cos(xi) +
                                             std::sin(eta) * std::sin(xi) * c2p))
                           .epsilon(1e-10));
    CHECK(a.M(0, 1) == doctest::Approx(ct * (std::sin(eta) * std::cos(xi) * c2p -
                                             std::cos(eta) * std::sin(xi)))
                           .epsilon(1e-10));
    CHECK(a.M(1, 0) == doctest::Approx(ct * (std::cos(eta) * std::sin(xi) * c2p -
                                             std::sin(eta) * std::cos(xi)))
                           .epsilon(1e-10));
    CHECK(a.M(1, 1) == doctest::Approx(ct * (std::cos(eta) * std::cos(xi) * c2p +
                                             std::sin(eta) * std::sin(xi)))
                           .epsilon(1e-10));
    CHECK(a.M(2, 0) ==
          doctest::Approx(2 * st * std::sin(ph) * std::cos(ph) * std::cos(xi))
              .epsilon(1e-10));
    CHECK(a.M(2, 1) ==
          doctest::Approx(-2 * st * std::sin(ph) * std::cos(ph) * std::sin(xi))
              .epsilon(1e-10));
    CHECK(a.M(2, 2) == doctest::Approx(c2p).epsilon(1e-10));
    CHECK(std::abs(a.M(0, 2)) < 1e-10);
    CHECK(std::abs(a.M(1, 2)) < 1e-10);
    CHECK(a.n.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("family 2 affine entries match the closed forms") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int s = 0; s < 40; ++s) {
    const double t = angle(rng), ph = angle(rng), xi = angle(rng);
    const AffineRep a = kraus_to_affine(nc_family_channel(params(2, t, ph, xi)));
    const double cm = std::cos(t - ph), cp = std::cos(t + ph);
    CHECK(a.M(0, 0) == doctest::Approx(std::cos(xi) * cm).epsilon(1e-10));
    CHECK(a.M(0, 1) == doctest::Approx(-std::sin(xi) * cp).epsilon(1e-10));
    CHECK(a.M(1, 0) == doctest::Approx(std::sin(xi) * cm).epsilon(1e-10));
    CHECK(a.M(1, 1) == doctest::Approx(std::cos(xi) * cp).epsilon(1e-10));
    CHECK(a.M(2, 2) ==
          doctest::Approx(std::cos(t) * std::cos(t) - std::sin(ph) * std::sin(ph))
              .epsilon(1e-10));
    CHECK(std::abs(a.M(0, 2)) < 1e-10);
    CHECK(std::abs(a.M(1, 2)) < 1e-10);
    CHECK(std::abs(a.M(2, 0)) < 1e-10);
    CHECK(std::abs(a.M(2, 1)) < 1e-10);
    CHECK(std::abs(a.n(0)) < 1e-10);
    CHECK(std::abs(a.n(1)) < 1e-10);
    CHECK(a.n(2) ==
          doctest::Approx(std::sin(ph) * std::sin(ph) - std::sin(t) * std::sin(t))
              .epsilon(1e-10));
  }
}

TEST_CASE("affine and Kraus actions agree on states") {
  for (int d : {2, 3}) {
    for (int s = 0; s < 30; ++s) {
      const KrausChannel ch = random_channel(d, 2 + s % 3, 900 + s);
      const AffineRep a = kraus_to_affine(ch);
      for (int t = 0; t < 10; ++t) {
        const DensityMatrix rho =
            random_state(d, 5000 + 10 * s + t, t % 2 ? StateKind::pure : StateKind::mixed);
        const DensityMatrix via_kraus = apply(ch, rho);
        const DensityMatrix via_affine = affine_apply(a, rho);
        CHECK((via_kraus.matrix() - via_affine.matrix()).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("linear extension agrees with Kraus action on matrix units") {
  const KrausChannel ch = random_channel(3, 3, 321);
  const AffineRep a = kraus_to_affine(ch);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(3, 3);
      e(j, k) = 1.0;
      Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(3, 3);
      for (const auto& op : ch.kraus()) direct += op * e * op.adjoint();
      CHECK((affine_evaluate(a, e) - direct).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("affine application on the pinned maps") {
  // One-step breaking: the x-polarized state loses all coherence.
  const AffineRep zc = testchan::z_contraction(0.5);
  Eigen::MatrixXcd xpol(2, 2);
  xpol << 0.5, 0.5, 0.5, 0.5;
  const DensityMatrix out = affine_apply(zc, DensityMatrix(2, xpol));
  CHECK(c_l1(out) < 1e-14);
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.5));

  // y-to-x transfer: Bloch (0,1,0) lands on (0.8, 0, 0).
  const AffineRep shear = testchan::y_to_x_transfer(0.8);
  Eigen::MatrixXcd ypol(2, 2);
  ypol << 0.5, Cx(0, -0.5), Cx(0, 0.5), 0.5;
  const CoherenceVector img = to_coherence_vector(affine_apply(shear, DensityMatrix(2, ypol)));
  CHECK(img.b(0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::abs(img.b(1)) < 1e-12);
  CHECK(std::abs(img.b(2)) < 1e-12);
}

TEST_CASE("composition matches Kraus-level products") {
  // Oracle: compose two channels by the full Kraus product set, then convert.
  for (int s = 0; s < 10; ++s) {
    const KrausChannel a = random_channel(2, 2, 7100 + s);
    const KrausChannel b = random_channel(2, 3, 7200 + s);
    std::vector<Eigen::MatrixXcd> prod;
    for (const auto& ka : a.kraus())
      for (const auto& kb : b.kraus()) prod.push_back(ka * kb);
    const AffineRep expect = kraus_to_affine(KrausChannel(2, std::move(prod)));
    const AffineRep got = compose(kraus_to_affine(a), kraus_to_affine(b));
    CHECK((expect.M - got.M).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((expect.n - got.n).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("composition is associative and respects identity") {
  const AffineRep id = identity_affine(2);
  const AffineRep a = kraus_to_affine(random_channel(2, 2, 11));
  const AffineRep b = kraus_to_affine(random_channel(2, 2, 12));
  const AffineRep c = kraus_to_affine(random_channel(2, 2, 13));

  const AffineRep left = compose(compose(a, b), c);
  const AffineRep right = compose(a, compose(b, c));
  CHECK((left.M - right.M).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((left.n - right.n).cwiseAbs().maxCoeff() < 1e-12);

  const AffineRep with_id = compose(a, id);
  CHECK((with_id.M - a.M).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(compose(a, identity_affine(3)), std::invalid_argument);
}

TEST_CASE("iteration pins and split property") {
  const AffineRep zc = testchan::z_contraction(0.5);
  const AffineRep third = iterate(zc, 3);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(2, 2) = 0.125;
  CHECK((third.M - expected).cwiseAbs().maxCoeff() < 1e-14);

  // Two-step breaking: the square is the totally depolarizing map.
  const AffineRep sq = iterate(testchan::y_to_x_transfer(0.8), 2);
  CHECK(sq.M.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(sq.n.cwiseAbs().maxCoeff() < 1e-14);

  const AffineRep a = kraus_to_affine(random_channel(2, 2, 19));
  const AffineRep five = iterate(a, 5);
  const AffineRep split = compose(iterate(a, 2), iterate(a, 3));
  CHECK((five.M - split.M).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((five.n - split.n).cwiseAbs().maxCoeff() < 1e-11);

  CHECK_THROWS_AS(iterate(a, 0), std::invalid_argument);
}

TEST_CASE("Choi matrix of the identity channel") {
  const KrausChannel id(2, {Eigen::MatrixXcd::Identity(2, 2)});
  const ChoiMatrix c = choi(id);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 1.0;
  CHECK((c.J - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Choi matrix of a unitary channel has a single eigenvalue d") {
  for (int d : {2, 3}) {
    std::mt19937_64 rng(55 + d);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = Cx(gauss(rng), gauss(rng));
    const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    const ChoiMatrix c = choi(unitary_channel(u));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (c.J + c.J.adjoint()));
    const Eigen::VectorXd ev = es.eigenvalues();
    CHECK(std::abs(ev(ev.size() - 1) - d) < 1e-8);
    for (int i = 0; i + 1 < ev.size(); ++i) CHECK(std::abs(ev(i)) < 1e-8);
  }
}

TEST_CASE("CPTP validation separates channels from non-channels") {
  const CptpVerdict good = validate_cptp(testchan::z_contraction(0.5));
  CHECK(good.cp);
  CHECK(good.tp);
  CHECK(good.min_eigenvalue >= -1e-9);

  const CptpVerdict shear = validate_cptp(testchan::y_to_x_transfer(0.8));
  CHECK(shear.cp);
  CHECK(shear.tp);

  // Expanding map: trace preserving but not completely positive.
  const AffineRep expand(2, 2.0 * Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3));
  const CptpVerdict bad = validate_cptp(expand);
  CHECK_FALSE(bad.cp);
  CHECK(bad.tp);
  CHECK(bad.min_eigenvalue < -0.1);

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int family : {1, 2}) {
    const CptpVerdict fam = validate_cptp(
        nc_family_channel(params(family, angle(rng), angle(rng), angle(rng), angle(rng))));
    CHECK(fam.cp);
    CHECK(fam.tp);
  }
}

TEST_CASE("unitary channel construction rejects non-unitaries") {
  Eigen::MatrixXcd not_u(2, 2);
  not_u << 1.0, 0.0, 0.0, 0.5;
  CHECK_THROWS_WITH_AS(unitary_channel(not_u), doctest::Contains("unitary"),
                       std::invalid_argument);
  CHECK_NOTHROW(unitary_channel(Eigen::MatrixXcd::Identity(3, 3)));
}
