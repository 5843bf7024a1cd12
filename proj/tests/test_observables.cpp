#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hybrid/dynamics.hpp"
#include "hybrid/errors.hpp"
#include "hybrid/observables.hpp"

using namespace hybrid;
using doctest::Approx;

namespace {

GaussianEnsembleState fig4_state(double k_scale = 1.0) {
  GaussianEnsembleState s;
  s.K = k_scale * SymMat2::identity();
  s.L = SymMat2::diag(0.0, 0.5 * k_scale);
  return s;
}

}  // namespace

TEST_CASE("position covariance") {
  CHECK(position_covariance(SymMat2::identity()) == SymMat2::identity());
  const SymMat2 Z = position_covariance(SymMat2::diag(100.0, 100.0));
  CHECK(Z.qq == Approx(0.01));
  CHECK(Z.xx == Approx(0.01));
  CHECK_THROWS_AS(position_covariance(SymMat2{1.0, 1.0, 1.0}), SingularMatrix);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const SymMat2 K{2.0 + u(rng), u(rng), 2.0 + u(rng)};
    const Mat2 P = K * position_covariance(K);
    CHECK(std::abs(P.a11 - 1.0) < 1e-13);
    CHECK(std::abs(P.a12) < 1e-13);
    CHECK(std::abs(P.a21) < 1e-13);
    CHECK(std::abs(P.a22 - 1.0) < 1e-13);
  }
}

TEST_CASE("momentum covariance") {
  const SymMat2 hyb = momentum_covariance(SymMat2::identity(), SymMat2::diag(0.0, 0.5),
                                          build_E(SectorKind::Hybrid), 1.0);
  CHECK(hyb.qq == Approx(0.25));
  CHECK(hyb.xx == Approx(0.25));
  CHECK(hyb.qx == 0.0);
  CHECK(momentum_covariance(SymMat2::identity(), SymMat2{}, build_E(SectorKind::Quantum), 1.0) ==
        0.25 * SymMat2::identity());
  CHECK(momentum_covariance(SymMat2::identity(), SymMat2{}, build_E(SectorKind::Classical), 1.0) ==
        SymMat2{});
}

TEST_CASE("center-of-mass transform") {
  const Mat2 T = cm_transform(ModelParams(2.0, 2.0, 1.0));
  CHECK(T.a11 == 1.0);
  CHECK(T.a12 == 0.5);
  CHECK(T.a21 == 1.0);
  CHECK(T.a22 == -0.5);
  const Mat2 T5 = cm_transform(ModelParams(1.0, 20.0, 1.0));
  CHECK(T5.a12 == Approx(20.0 / 21.0));
  CHECK(T5.a22 == Approx(-1.0 / 21.0));

  // T^-1 (q, x) reproduces R = (m_q q + m_x x)/M and r = q - x
  const ModelParams p(1.3, 0.4, 1.0);
  const Mat2 Ti = cm_transform(p).inverse();
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const Vec2 xi{u(rng), u(rng)};
    const Vec2 Rr = Ti * xi;
    CHECK(Rr.q == Approx((p.m_q() * xi.q + p.m_x() * xi.x) / p.total_mass()));
    CHECK(Rr.x == Approx(xi.q - xi.x));
  }
}

TEST_CASE("covariance in the CM/relative frame") {
  const ModelParams p(2.0, 2.0, 1.0);
  const Mat2 T = cm_transform(p);
  const SymMat2 Zp = transform_covariance(SymMat2::identity(), T);
  CHECK(Zp.qq == Approx(0.5));
  CHECK(Zp.xx == Approx(2.0));
  CHECK(std::abs(Zp.qx) < 1e-15);

  const SymMat2 K{2.0, 0.3, 0.7};
  const SymMat2 same = transform_covariance(K, Mat2::identity());
  const SymMat2 Z = inverse(K);
  CHECK(same.qq == Approx(Z.qq));
  CHECK(same.qx == Approx(Z.qx));

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const SymMat2 Kr{2.0 + u(rng), u(rng), 2.0 + u(rng)};
    const Mat2 Tr = cm_transform(ModelParams(1.0 + u(rng) * 0.5, 1.0 + u(rng) * 0.5, 1.0));
    const SymMat2 a = transform_covariance(Kr, Tr);
    const SymMat2 b = transform_covariance_via_Z(inverse(Kr), Tr);
    CHECK(std::abs(a.qq - b.qq) < 1e-12);
    CHECK(std::abs(a.qx - b.qx) < 1e-12);
    CHECK(std::abs(a.xx - b.xx) < 1e-12);
  }
}

TEST_CASE("energies") {
  const ModelParams p(2.0, 2.0, 1.0);
  SUBCASE("fig4 split") {
    const EnergyReport e = energies(fig4_state(), p);
    CHECK(e.E_R == Approx(0.0625));
    CHECK(e.E_r == Approx(0.0625));
    CHECK(e.V == Approx(1.0));
    CHECK(e.E_I == Approx(e.E_r + e.V));
    CHECK(e.E_total == Approx(1.125));
    CHECK(e.p_R == 0.0);
  }
  SUBCASE("fig6 total") { CHECK(energies(fig4_state(100.0), p).E_total == Approx(12.51).epsilon(1e-4)); }
  SUBCASE("classical motion contributions") {
    auto s = fig4_state();
    s.alpha = {0.4, -0.1};
    s.beta = {0.3, 0.2};
    const auto base = energies(s, p, false);
    const auto full = energies(s, p, true);
    const auto c = fit_mean_constants(s.alpha, s.beta, p);
    CHECK(full.E_total - base.E_total == Approx(mean_motion_energy(c, p)));
    CHECK(mean_motion_energy(c, p) ==
          Approx(0.5 * p.total_mass() * c.b * c.b + 0.5 * p.k() * c.c * c.c));
    CHECK(full.p_R == Approx(0.5));
    CHECK(base.V == Approx(1.0));
    CHECK(full.V == Approx(1.0 + 0.5 * 0.25));
  }
}

TEST_CASE("error ellipse") {
  const auto circle = error_ellipse(SymMat2::identity(), {0.1, 0.2});
  CHECK(circle.semi_major == 1.0);
  CHECK(circle.semi_minor == 1.0);
  CHECK(circle.angle == 0.0);
  CHECK(circle.center == Vec2{0.1, 0.2});

  const auto d = error_ellipse(SymMat2::diag(2.0, 0.5), {});
  CHECK(d.semi_major == Approx(std::sqrt(2.0)));
  CHECK(d.semi_minor == Approx(std::sqrt(0.5)));
  CHECK(d.angle == 0.0);

  const auto t = error_ellipse(SymMat2{1.0, 0.5, 1.0}, {});
  CHECK(t.angle == Approx(std::numbers::pi / 4));
  CHECK(t.semi_major == Approx(std::sqrt(1.5)));
  CHECK(t.semi_minor == Approx(std::sqrt(0.5)));
}

TEST_CASE("product moments") {
  const ModelParams p(2.0, 2.0, 1.0);
  const auto m = product_moments(fig4_state(), p);
  CHECK(m.qx_mean == 0.0);
  CHECK(m.pqpx_mean == 0.0);

  GaussianEnsembleState s;
  s.alpha = {1.0, 2.0};
  CHECK(product_moments(s, p).qx_mean == Approx(2.0));

  s = GaussianEnsembleState{};
  s.K = SymMat2{1.0, 0.4, 1.0};
  const double quantum = product_moments(s, p.with_sector(SectorKind::Quantum)).pqpx_mean;
  const double hybrid = product_moments(s, p).pqpx_mean;
  CHECK(quantum == Approx(0.25 * 0.4));
  CHECK(hybrid == 0.0);
}

TEST_CASE("CM/relative coupling diagnostic") {
  const ModelParams p(2.0, 2.0, 1.0);
  CHECK(cm_relative_coupling(fig4_state(), p.with_sector(SectorKind::Quantum)) == 0.0);
  // K' = T^T K T is diagonal for K = I and equal masses
  CHECK(std::abs(cm_relative_coupling(fig4_state(), p)) < 1e-15);
  GaussianEnsembleState s;
  s.K = SymMat2::diag(2.0, 1.0);  // K'_Rr = (m_x K_qq - m_q K_xx)/M = 0.5
  CHECK(cm_relative_coupling(s, p) == Approx(0.5 / 16.0));
}
