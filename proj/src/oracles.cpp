#include "hybrid/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "hybrid/errors.hpp"
#include "hybrid/observables.hpp"

namespace hybrid {

namespace {

Eigen::Matrix2d to_eigen(const Mat2& m) {
  Eigen::Matrix2d e;
  e << m.a11, m.a12, m.a21, m.a22;
  return e;
}

// cos(w t) and sin(w t)/(m w) with the free-particle limit t/m at w == 0.
struct HarmonicFactors {
  double cosine;
  double sine_over_mw;
  double mw_sine;
};

HarmonicFactors harmonic(double m, double w, double t) {
  if (w == 0.0) return {1.0, t / m, 0.0};
  return {std::cos(w * t), std::sin(w * t) / (m * w), m * w * std::sin(w * t)};
}

}  // namespace

PhaseSpaceMoments classical_moments(const GaussianEnsembleState& s) {
  const SymMat2 Z = position_covariance(s.K);
  const Mat2 ZL = Mat2::from(Z) * Mat2::from(s.L);
  const SymMat2 LZL = congruence(Mat2::from(s.L), Z);
  PhaseSpaceMoments m;
  m.mean << s.alpha.q, s.alpha.x, s.beta.q, s.beta.x;
  m.cov << Z.qq, Z.qx, ZL.a11, ZL.a12,
           Z.qx, Z.xx, ZL.a21, ZL.a22,
           ZL.a11, ZL.a21, LZL.qq, LZL.qx,
           ZL.a12, ZL.a22, LZL.qx, LZL.xx;
  return m;
}

Eigen::Matrix4d fundamental_matrix(const ModelParams& p, double t) {
  const Eigen::Matrix2d T = to_eigen(cm_transform(p));
  const Eigen::Matrix2d Tinv = T.inverse();
  // z' = A z with positions xi' = T^-1 xi and momenta p' = T^T p
  Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
  A.topLeftCorner<2, 2>() = Tinv;
  A.bottomRightCorner<2, 2>() = T.transpose();
  Eigen::Matrix4d Ainv = Eigen::Matrix4d::Zero();
  Ainv.topLeftCorner<2, 2>() = T;
  Ainv.bottomRightCorner<2, 2>() = Tinv.transpose();

  // primed ordering (R, r, p_R, p_r)
  const HarmonicFactors rel = harmonic(p.reduced_mass(), p.omega(), t);
  Eigen::Matrix4d phi = Eigen::Matrix4d::Identity();
  phi(0, 2) = t / p.total_mass();
  phi(1, 1) = rel.cosine;
  phi(1, 3) = rel.sine_over_mw;
  phi(3, 1) = -rel.mw_sine;
  phi(3, 3) = rel.cosine;
  return Ainv * phi * A;
}

PhaseSpaceMoments classical_moment_propagate(const PhaseSpaceMoments& m0, const ModelParams& p,
                                             double t) {
  const Eigen::Matrix4d phi = fundamental_matrix(p, t);
  PhaseSpaceMoments m;
  m.mean = phi * m0.mean;
  m.cov = phi * m0.cov * phi.transpose();
  m.cov = 0.5 * (m.cov + m.cov.transpose()).eval();
  return m;
}

bool frame_diagonal(const GaussianEnsembleState& s, const ModelParams& p) {
  const Mat2 Tt = cm_transform(p).transpose();
  const SymMat2 Kp = congruence(Tt, s.K);
  const SymMat2 Lp = congruence(Tt, s.L);
  const double k_scale = std::max(std::abs(Kp.qq), std::abs(Kp.xx));
  const double l_scale = std::max({std::abs(Lp.qq), std::abs(Lp.xx), k_scale * p.hbar()});
  return std::abs(Kp.qx) <= 1e-12 * k_scale && std::abs(Lp.qx) <= 1e-12 * l_scale;
}

SymMat2 quantum_analytic_covariance(const GaussianEnsembleState& s0, const ModelParams& p,
                                    double t) {
  if (p.sector() != SectorKind::Quantum)
    throw PreconditionViolated("quantum oracle requires the quantum sector");
  if (!frame_diagonal(s0, p))
    throw PreconditionViolated("quantum oracle requires K', L' diagonal in the CM/relative frame");

  const Mat2 Tt = cm_transform(p).transpose();
  const SymMat2 Kp = congruence(Tt, s0.K);
  const SymMat2 Lp = congruence(Tt, s0.L);
  const double hb2 = p.hbar() * p.hbar();

  // free center of mass, mass M
  const double M = p.total_mass();
  const double zR = 1.0 / Kp.qq;
  const double spread = 1.0 + Lp.qq * t / M;
  const double var_R = zR * spread * spread + hb2 * t * t / (4.0 * M * M * zR);

  // relative oscillator, mass mu, frequency omega
  const double zr = 1.0 / Kp.xx;
  const double cov_rp = zr * Lp.xx;
  const double var_pr = Lp.xx * Lp.xx * zr + hb2 / (4.0 * zr);
  const HarmonicFactors h = harmonic(p.reduced_mass(), p.omega(), t);
  const double var_r = zr * h.cosine * h.cosine + 2.0 * cov_rp * h.cosine * h.sine_over_mw +
                       var_pr * h.sine_over_mw * h.sine_over_mw;
  return {var_R, 0.0, var_r};
}

ConsistencyReport hybrid_consistency_check(const Trajectory& traj, const ModelParams& p) {
  ConsistencyReport rep;
  if (traj.samples.empty()) {
    rep.oracle = "none";
    rep.note = "empty trajectory";
    return rep;
  }
  const GaussianEnsembleState& s0 = traj.samples.front();
  const Mat2 T = cm_transform(p);

  switch (p.sector()) {
    case SectorKind::Quantum: {
      rep.oracle = "quantum-analytic";
      if (!frame_diagonal(s0, p)) {
        rep.oracle = "none";
        rep.note = "initial data not diagonal in the CM/relative frame";
        return rep;
      }
      rep.oracle_available = true;
      for (const auto& s : traj.samples) {
        const SymMat2 ref = quantum_analytic_covariance(s0, p, s.t - s0.t);
        const SymMat2 got = transform_covariance(s.K, T);
        const SymMat2 d = got - ref;
        rep.max_deviation = std::max({rep.max_deviation, std::abs(d.qq), std::abs(d.qx), std::abs(d.xx)});
        ++rep.samples_compared;
      }
      return rep;
    }
    case SectorKind::Classical: {
      rep.oracle = "classical-moments";
      rep.oracle_available = true;
      const double window = p.k() > 0.0 ? p.period() / 8.0 : traj.samples.back().t - s0.t;
      const PhaseSpaceMoments m0 = classical_moments(s0);
      for (const auto& s : traj.samples) {
        if (s.t - s0.t > window * (1.0 + 1e-12)) break;
        const PhaseSpaceMoments m = classical_moment_propagate(m0, p, s.t - s0.t);
        const SymMat2 got = position_covariance(s.K);
        rep.max_deviation = std::max({rep.max_deviation, std::abs(got.qq - m.cov(0, 0)),
                                      std::abs(got.qx - m.cov(0, 1)), std::abs(got.xx - m.cov(1, 1))});
        ++rep.samples_compared;
      }
      rep.note = "compared within the pre-singularity window t - t0 <= T/8";
      return rep;
    }
    case SectorKind::Hybrid:
      rep.oracle = "none";
      rep.note = "no oracle available for the hybrid sector; only conservation checks apply";
      return rep;
  }
  return rep;
}

}  // namespace hybrid
