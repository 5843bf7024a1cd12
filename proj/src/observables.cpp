#include "hybrid/observables.hpp"

#include "hybrid/errors.hpp"

namespace hybrid {

SymMat2 position_covariance(const SymMat2& K) {
  if (!is_positive_definite(K)) throw SingularMatrix("K is not positive definite");
  return inverse(K);
}

SymMat2 momentum_covariance(const SymMat2& K, const SymMat2& L, const SymMat2& E, double hbar) {
  const SymMat2 Z = position_covariance(K);
  const SymMat2 LZL = congruence(Mat2::from(L), Z);
  const SymMat2 EKE = congruence(Mat2::from(E), K);
  return LZL + (0.25 * hbar * hbar) * EKE;
}

Mat2 cm_transform(const ModelParams& p) {
  const double M = p.total_mass();
  return {1.0, p.m_x() / M, 1.0, -p.m_q() / M};
}

SymMat2 transform_covariance(const SymMat2& K, const Mat2& T) {
  if (T.det() == 0.0) throw SingularMatrix("coordinate transform is singular");
  const SymMat2 Kp = congruence(T.transpose(), K);
  return position_covariance(Kp);
}

SymMat2 transform_covariance_via_Z(const SymMat2& Z, const Mat2& T) {
  if (T.det() == 0.0) throw SingularMatrix("coordinate transform is singular");
  return congruence(T.inverse(), Z);
}

EnergyReport energies_from_moments(const SymMat2& Z, const SymMat2& Pi_in, Vec2 alpha, Vec2 beta,
                                   const ModelParams& p, bool include_classical_motion) {
  const double M = p.total_mass();
  const double mq = p.m_q();
  const double mx = p.m_x();
  SymMat2 Pi = Pi_in;
  double var_r = Z.qq + Z.xx - 2.0 * Z.qx;
  if (include_classical_motion) {
    Pi = Pi + SymMat2{beta.q * beta.q, beta.q * beta.x, beta.x * beta.x};
    const double dr = alpha.q - alpha.x;
    var_r += dr * dr;
  }
  EnergyReport e;
  e.include_classical_motion = include_classical_motion;
  e.E_R = (Pi.qq + Pi.xx + 2.0 * Pi.qx) / (2.0 * M);
  e.E_r = ((mx / mq) * Pi.qq + (mq / mx) * Pi.xx - 2.0 * Pi.qx) / (2.0 * M);
  e.V = 0.5 * p.k() * var_r;
  e.E_I = e.E_r + e.V;
  e.E_total = e.E_R + e.E_r + e.V;
  e.p_R = beta.q + beta.x;
  return e;
}

EnergyReport energies(const GaussianEnsembleState& s, const ModelParams& p,
                      bool include_classical_motion) {
  const SymMat2 Z = position_covariance(s.K);
  const SymMat2 Pi = momentum_covariance(s.K, s.L, build_E(p.sector()), p.hbar());
  return energies_from_moments(Z, Pi, s.alpha, s.beta, p, include_classical_motion);
}

double mean_motion_energy(const MeanMotionConstants& c, const ModelParams& p) {
  return 0.5 * p.total_mass() * c.b * c.b + 0.5 * p.k() * c.c * c.c;
}

EllipseSpec error_ellipse(const SymMat2& Z, Vec2 center) {
  if (!is_positive_definite(Z)) throw SingularMatrix("Z is not positive definite");
  const SymEigen2 eig = eigen(Z);
  return {center, std::sqrt(eig.major), std::sqrt(eig.minor), eig.angle};
}

ProductMoments product_moments(const GaussianEnsembleState& s, const ModelParams& p) {
  const SymMat2 Z = position_covariance(s.K);
  const SymMat2 Pi = momentum_covariance(s.K, s.L, build_E(p.sector()), p.hbar());
  return {Z.qx + s.alpha.q * s.alpha.x, Pi.qx + s.beta.q * s.beta.x};
}

double cm_relative_coupling(const GaussianEnsembleState& s, const ModelParams& p) {
  if (p.sector() != SectorKind::Hybrid) return 0.0;
  const SymMat2 Kp = congruence(cm_transform(p).transpose(), s.K);
  return p.hbar() * p.hbar() / (4.0 * p.total_mass()) * Kp.qx;
}

}  // namespace hybrid
