#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hybrid/errors.hpp"
#include "hybrid/model.hpp"

using namespace hybrid;
using doctest::Approx;

TEST_CASE("build_U") {
  CHECK(build_U(ModelParams(2.0, 2.0, 1.0)) == SymMat2::diag(0.5, 0.5));
  CHECK(build_U(ModelParams(1.0, 1.0, 1.0)) == SymMat2::identity());
  const SymMat2 U = build_U(ModelParams(1.05, 21.0, 1.0));
  CHECK(U.qq == Approx(1.0 / 1.05));
  CHECK(U.xx == Approx(1.0 / 21.0));
  CHECK(U.qx == 0.0);
}

TEST_CASE("build_C") {
  CHECK(build_C(ModelParams(2.0, 2.0, 1.0)) == SymMat2{1.0, -1.0, 1.0});
  CHECK(build_C(ModelParams(2.0, 2.0, 0.0)) == SymMat2{0.0, -0.0, 0.0});
  // k = mu w^2 with mu = w = 1
  const ModelParams p(2.0, 2.0, 1.0);
  CHECK(p.reduced_mass() == 1.0);
  CHECK(p.omega() == 1.0);
  CHECK(p.oscillator_length() == 1.0);
  const auto e = eigen(build_C(ModelParams(1.0, 3.0, 2.5)));
  CHECK(e.major == Approx(5.0));
  CHECK(std::abs(e.minor) < 1e-15);
}

TEST_CASE("build_E and projector property") {
  CHECK(build_E(SectorKind::Quantum) == SymMat2::identity());
  CHECK(build_E(SectorKind::Hybrid) == SymMat2::diag(1.0, 0.0));
  CHECK(build_E(SectorKind::Classical) == SymMat2{});
  for (auto s : {SectorKind::Hybrid, SectorKind::Quantum, SectorKind::Classical}) {
    const SymMat2 E = build_E(s);
    const Mat2 EE = E * E;
    CHECK(EE.a11 == E.qq);
    CHECK(EE.a12 == E.qx);
    CHECK(EE.a22 == E.xx);
  }
}

TEST_CASE("ModelParams validation and derived scales") {
  CHECK_THROWS_AS(ModelParams(0.0, 1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(1.0, -1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, -0.1), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, 1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, std::nan("")), InvalidParameter);

  const ModelParams free(1.0, 1.0, 0.0);
  CHECK(free.omega() == 0.0);
  CHECK_THROWS_AS(free.period(), InvalidParameter);
  CHECK_THROWS_AS(free.oscillator_length(), InvalidParameter);

  const ModelParams p(1.05, 21.0, 1.0);
  CHECK(p.reduced_mass() == Approx(1.0));
  CHECK(p.total_mass() == Approx(22.05));
  CHECK(p.period() == Approx(2.0 * std::numbers::pi));
  CHECK(p.with_sector(SectorKind::Quantum).sector() == SectorKind::Quantum);
}

TEST_CASE("sector names round trip") {
  for (auto s : {SectorKind::Hybrid, SectorKind::Quantum, SectorKind::Classical})
    CHECK(parse_sector(to_string(s)) == s);
  CHECK_THROWS_AS(parse_sector("semi"), ConfigError);
}

TEST_CASE("state validation") {
  GaussianEnsembleState s;
  CHECK_NOTHROW(validate(s));
  s.K = SymMat2{1.0, 2.0, 1.0};
  CHECK_THROWS_AS(validate(s), InvalidParameter);
  s.K = SymMat2::identity();
  s.L.qq = std::nan("");
  CHECK_THROWS_AS(validate(s), InvalidParameter);
}
