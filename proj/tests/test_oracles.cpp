#include <doctest.h>

#include <cmath>

#include "hybrid/errors.hpp"
#include "hybrid/observables.hpp"
#include "hybrid/oracles.hpp"

using namespace hybrid;
using doctest::Approx;

namespace {

// Quantum state diagonal in the CM/relative frame.
GaussianEnsembleState frame_state(const ModelParams& p, double ZRR, double Zrr, double LRR,
                                  double Lrr) {
  const Mat2 T = cm_transform(p);
  GaussianEnsembleState s;
  s.K = inverse(congruence(T, SymMat2::diag(ZRR, Zrr)));
  s.L = congruence(T.inverse().transpose(), SymMat2::diag(LRR, Lrr));
  return s;
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  J.bottomLeftCorner<2, 2>() = -Eigen::Matrix2d::Identity();
  return J;
}

}  // namespace

TEST_CASE("fundamental matrix") {
  const ModelParams p(1.05, 21.0, 1.0);
  CHECK(fundamental_matrix(p, 0.0).isApprox(Eigen::Matrix4d::Identity(), 1e-15));
  const Eigen::Matrix4d J = symplectic_form();
  for (double t : {0.3, 1.7, 5.0}) {
    const Eigen::Matrix4d phi = fundamental_matrix(p, t);
    CHECK((phi.transpose() * J * phi - J).cwiseAbs().maxCoeff() < 1e-12);
  }
  // group property
  const Eigen::Matrix4d a = fundamental_matrix(p, 0.4) * fundamental_matrix(p, 0.9);
  CHECK(a.isApprox(fundamental_matrix(p, 1.3), 1e-12));
}

TEST_CASE("free-particle second moments") {
  const ModelParams p(1.5, 2.5, 0.0);
  PhaseSpaceMoments m0;
  m0.cov.diagonal() << 0.7, 0.4, 0.2, 0.3;
  m0.cov(1, 3) = m0.cov(3, 1) = 0.05;
  const double t = 2.3;
  const auto m = classical_moment_propagate(m0, p, t);
  const double mx = p.m_x();
  CHECK(m.cov(1, 1) == Approx(0.4 + 2.0 * 0.05 * t / mx + 0.3 * t * t / (mx * mx)));
}

TEST_CASE("quarter period moments are finite") {
  const ModelParams p(2.0, 2.0, 1.0, 1.0, SectorKind::Classical);
  GaussianEnsembleState s;
  s.L = SymMat2::diag(0.0, 0.5);
  const auto m = classical_moment_propagate(classical_moments(s), p, p.period() / 4.0);
  CHECK(m.cov.allFinite());
  CHECK(m.cov.topLeftCorner<2, 2>().determinant() > 0.0);
}

TEST_CASE("mode determinants are invariant under the flow") {
  const ModelParams p(2.0, 2.0, 1.0);
  // (R, p_R) and (r, p_r) blocks of a covariance prepared in the CM/relative frame
  const Eigen::Matrix2d T = (Eigen::Matrix2d() << 1.0, 0.5, 1.0, -0.5).finished();
  Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
  A.topLeftCorner<2, 2>() = T.inverse();
  A.bottomRightCorner<2, 2>() = T.transpose();
  auto blocks = [&](const Eigen::Matrix4d& c) {
    const Eigen::Matrix4d cp = A * c * A.transpose();
    Eigen::Matrix2d R, r;
    R << cp(0, 0), cp(0, 2), cp(2, 0), cp(2, 2);
    r << cp(1, 1), cp(1, 3), cp(3, 1), cp(3, 3);
    return std::pair{R.determinant(), r.determinant()};
  };
  Eigen::Matrix4d cp = Eigen::Matrix4d::Zero();
  cp(0, 0) = 0.6; cp(2, 2) = 0.9; cp(0, 2) = cp(2, 0) = 0.1;
  cp(1, 1) = 1.4; cp(3, 3) = 0.3; cp(1, 3) = cp(3, 1) = -0.2;
  PhaseSpaceMoments f;
  f.cov = A.inverse() * cp * A.inverse().transpose();
  const auto [R0, r0] = blocks(f.cov);
  for (double t : {0.5, 2.0, 7.0}) {
    const auto [R, r] = blocks(classical_moment_propagate(f, p, t).cov);
    CHECK(R == Approx(R0).epsilon(1e-12));
    CHECK(r == Approx(r0).epsilon(1e-12));
  }
}

TEST_CASE("quantum analytic covariance") {
  const ModelParams p(2.0, 2.0, 1.0, 1.0, SectorKind::Quantum);
  SUBCASE("free centre of mass spreading") {
    const auto s = frame_state(p, 0.5, 2.0, 0.0, 0.0);
    const double T = p.period();
    const SymMat2 Z = quantum_analytic_covariance(s, p, T);
    const double M = p.total_mass();
    CHECK(Z.qq - 0.5 == Approx(T * T / (4.0 * M * M * 0.5)));
    CHECK(Z.qx == 0.0);
  }
  SUBCASE("relative ground state is stationary") {
    const double ground = p.hbar() / (2.0 * p.reduced_mass() * p.omega());
    const auto s = frame_state(p, 0.5, ground, 0.0, 0.0);
    for (double t : {0.4, 1.9, 6.0}) CHECK(quantum_analytic_covariance(s, p, t).xx == Approx(ground));
  }
  SUBCASE("preconditions") {
    GaussianEnsembleState skew;
    skew.K = SymMat2::diag(2.0, 1.0);  // K'_Rr != 0 for equal masses
    CHECK_FALSE(frame_diagonal(skew, p));
    CHECK_THROWS_AS(quantum_analytic_covariance(skew, p, 1.0), PreconditionViolated);
    CHECK_THROWS_AS(quantum_analytic_covariance(GaussianEnsembleState{},
                                                p.with_sector(SectorKind::Hybrid), 1.0),
                    PreconditionViolated);
  }
}

TEST_CASE("consistency check against the ODE engine") {
  SUBCASE("quantum") {
    const ModelParams p(2.0, 2.0, 1.0, 1.0, SectorKind::Quantum);
    const auto s = frame_state(p, 0.7, 0.4, 0.3, -0.2);
    const double tf = 2.0 * p.period();
    const auto rep = hybrid_consistency_check(integrate(s, p, tf), p);
    CHECK(rep.oracle == "quantum-analytic");
    CHECK(rep.samples_compared == 129);
    CHECK(rep.max_deviation < 1e-8);
  }
  SUBCASE("classical window") {
    const ModelParams p(2.0, 2.0, 1.0, 1.0, SectorKind::Classical);
    GaussianEnsembleState s;
    s.L = SymMat2::diag(0.0, 0.5);
    const auto rep = hybrid_consistency_check(integrate(s, p, p.period() / 8.0), p);
    CHECK(rep.oracle == "classical-moments");
    CHECK(rep.samples_compared > 0);
    CHECK(rep.max_deviation < 1e-6);
  }
  SUBCASE("hybrid has no oracle") {
    const ModelParams p(2.0, 2.0, 1.0);
    const auto rep = hybrid_consistency_check(integrate(GaussianEnsembleState{}, p, 1.0), p);
    CHECK_FALSE(rep.oracle_available);
    CHECK(rep.oracle == "none");
  }
}
