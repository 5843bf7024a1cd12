#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "hybrid/dynamics.hpp"
#include "hybrid/errors.hpp"

using namespace hybrid;
using doctest::Approx;

namespace {

const ModelParams kFig4(2.0, 2.0, 1.0, 1.0, SectorKind::Hybrid);

GaussianEnsembleState fig4_state() {
  GaussianEnsembleState s;
  s.L = SymMat2::diag(0.0, 0.5);
  return s;
}

}  // namespace

TEST_CASE("rhs_K") {
  const SymMat2 U = SymMat2::diag(0.5, 0.5);
  CHECK(rhs_K(SymMat2::identity(), SymMat2{}, U) == SymMat2{});
  const SymMat2 d = rhs_K(SymMat2::identity(), SymMat2::diag(0.0, 0.5), U);
  CHECK(d.qq == 0.0);
  CHECK(d.qx == 0.0);
  CHECK(d.xx == Approx(-0.5));
}

TEST_CASE("rhs_K is symmetric for random inputs") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const SymMat2 K{2.0 + u(rng), u(rng), 2.0 + u(rng)};
    const SymMat2 L{u(rng), u(rng), u(rng)};
    const SymMat2 U = SymMat2::diag(1.0 + u(rng) * 0.5, 1.0 + u(rng) * 0.5);
    const Mat2 full = K * U * Mat2::from(L) + Mat2::from(L) * Mat2::from(U) * Mat2::from(K);
    const SymMat2 r = rhs_K(K, L, U);
    CHECK(r.qx == Approx(-full.a12).epsilon(1e-12));
    CHECK(r.qx == Approx(-full.a21).epsilon(1e-12));
  }
}

TEST_CASE("rhs_L") {
  const SymMat2 U = build_U(kFig4), C = build_C(kFig4);
  SUBCASE("fig4 initial state") {
    const SymMat2 r = rhs_L(SymMat2::identity(), SymMat2::diag(0.0, 0.5), U, C,
                            build_E(SectorKind::Hybrid), 1.0);
    CHECK(r.qq == Approx(-0.875));
    CHECK(r.qx == Approx(1.0));
    CHECK(r.xx == Approx(-1.125));
  }
  SUBCASE("classical sector with L = 0 gives -C") {
    CHECK(rhs_L(SymMat2::identity(), SymMat2{}, U, C, build_E(SectorKind::Classical), 1.0) ==
          -C);
  }
  SUBCASE("quantum sector with L = 0") {
    const SymMat2 r =
        rhs_L(SymMat2::identity(), SymMat2{}, U, C, build_E(SectorKind::Quantum), 1.0);
    CHECK(r.qq == Approx(-1.0 + 0.125));
    CHECK(r.qx == Approx(1.0));
    CHECK(r.xx == Approx(-1.0 + 0.125));
  }
}

TEST_CASE("rhs_mean") {
  const SymMat2 U = build_U(kFig4), C = build_C(kFig4);
  auto [da, db] = rhs_mean({0, 0}, {0, 0}, U, C);
  CHECK(da == Vec2{0, 0});
  CHECK(db == Vec2{0, 0});
  std::tie(da, db) = rhs_mean({1, 1}, {0, 0}, U, C);
  CHECK(db == Vec2{0, 0});
  std::tie(da, db) = rhs_mean({1, -1}, {2, 4}, U, C);
  CHECK(db == Vec2{-2, 2});
  CHECK(da == Vec2{1, 2});
}

TEST_CASE("uniform output times") {
  const auto t = uniform_output_times(0.0, 2.0 * kFig4.period(), kFig4, 64);
  CHECK(t.size() == 129);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == Approx(2.0 * kFig4.period()));
  CHECK(t[32] == Approx(kFig4.period() / 2.0));
  const auto odd = uniform_output_times(0.0, 1.05, ModelParams(2, 2, 1), 64);
  CHECK(odd.back() == 1.05);
  CHECK_THROWS_AS(uniform_output_times(0.0, 1.0, kFig4, 0), InvalidParameter);
}

TEST_CASE("integrate validates its inputs") {
  const auto s = fig4_state();
  CHECK_THROWS_AS(integrate(s, kFig4, -1.0), InvalidParameter);
  CHECK_THROWS_AS(integrate(s, kFig4, 1.0, {0.5, 0.2}), InvalidParameter);
  CHECK_THROWS_AS(integrate(s, kFig4, 1.0, {0.0, 2.0}), InvalidParameter);
  IntegratorConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate(s, kFig4, 1.0, {}, bad), InvalidParameter);
  auto broken = s;
  broken.K = SymMat2{1.0, 2.0, 1.0};
  CHECK_THROWS_AS(integrate(broken, kFig4, 1.0), InvalidParameter);
}

TEST_CASE("integrate samples the requested times and keeps sigma inert") {
  auto s = fig4_state();
  s.sigma = 0.7;
  const Trajectory tr = integrate(s, kFig4, 3.0, {0.0, 1.0, 2.5, 3.0});
  REQUIRE(tr.samples.size() == 4);
  CHECK(tr.samples[2].t == 2.5);
  for (const auto& x : tr.samples) {
    CHECK(x.sigma == 0.7);
    CHECK(is_positive_definite(x.K));
  }
}

TEST_CASE("hybrid engine with the quantum projector is the quantum engine") {
  const auto s = fig4_state();
  const ModelParams q = kFig4.with_sector(SectorKind::Quantum);
  const auto a = integrate(s, q, 5.0);
  const auto b = integrate(s, ModelParams(2.0, 2.0, 1.0, 1.0, SectorKind::Quantum), 5.0);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].K == b.samples[i].K);
    CHECK(a.samples[i].L == b.samples[i].L);
  }
}

TEST_CASE("classical K/L path breaks down near a quarter period") {
  const ModelParams c = kFig4.with_sector(SectorKind::Classical);
  try {
    integrate(fig4_state(), c, c.period());
    FAIL("expected PositiveDefinitenessLost");
  } catch (const PositiveDefinitenessLost& e) {
    CHECK(e.time / c.period() == Approx(0.25).epsilon(0.1));
  }
}

TEST_CASE("mean motion constants round trip") {
  const ModelParams p(1.05, 21.0, 1.0);
  const Vec2 a0{0.3, -0.4}, b0{0.25, 1.5};
  const auto c = fit_mean_constants(a0, b0, p);
  CHECK(c.c >= 0.0);
  const auto [a, b] = analytic_mean(c, p, 0.0);
  CHECK(a.q == Approx(a0.q));
  CHECK(a.x == Approx(a0.x));
  CHECK(b.q == Approx(b0.q));
  CHECK(b.x == Approx(b0.x));

  const auto rest = fit_mean_constants({0.2, 0.2}, {0, 0}, p);
  CHECK(rest.c == 0.0);
  CHECK(rest.phi == 0.0);
  CHECK(rest.a == Approx(0.2));
  CHECK_THROWS_AS(fit_mean_constants(a0, b0, ModelParams(1, 1, 0)), InvalidParameter);
}

TEST_CASE("integrated means follow the closed form") {
  const ModelParams p(21.0, 1.05, 1.0);
  GaussianEnsembleState s;
  s.L = SymMat2::diag(0.0, 0.5);
  s.alpha = {0.1, 0.7};
  s.beta = {-0.3, 0.2};
  const auto tr = integrate(s, p, 2.0 * p.period());
  const auto c = fit_mean_constants(s.alpha, s.beta, p);
  for (const auto& x : tr.samples) {
    const auto [a, b] = analytic_mean(c, p, x.t);
    CHECK(std::abs(a.q - x.alpha.q) < 1e-9);
    CHECK(std::abs(a.x - x.alpha.x) < 1e-9);
    CHECK(std::abs(b.q - x.beta.q) < 1e-9);
    CHECK(std::abs(b.x - x.beta.x) < 1e-9);
  }
}
