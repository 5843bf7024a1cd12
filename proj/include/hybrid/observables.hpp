#pragma once

#include "hybrid/model.hpp"

namespace hybrid {

/// Energy decomposition in center-of-mass / relative coordinates.
/// E_total == E_R + E_r + V and E_I == E_r + V by construction.
struct EnergyReport {
  double E_R = 0.0;    // center-of-mass kinetic
  double E_r = 0.0;    // relative kinetic
  double V = 0.0;      // <V>
  double E_I = 0.0;    // internal
  double E_total = 0.0;
  double p_R = 0.0;    // <p_R> = beta_q + beta_x
  bool include_classical_motion = false;
};

struct EllipseSpec {
  Vec2 center;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double angle = 0.0;  // major axis from the q-axis, (-pi/2, pi/2]
};

struct ProductMoments {
  double qx_mean = 0.0;    // <q x>
  double pqpx_mean = 0.0;  // <p_q p_x>
};

/// Z = K^-1. Throws SingularMatrix unless K is positive definite.
SymMat2 position_covariance(const SymMat2& K);

/// Cov(p) = L K^-1 L + (hbar^2/4) E K E
SymMat2 momentum_covariance(const SymMat2& K, const SymMat2& L, const SymMat2& E, double hbar);

/// T with xi = T xi', xi' = (R, r).
Mat2 cm_transform(const ModelParams& params);

/// Z' = (T^T K T)^-1
SymMat2 transform_covariance(const SymMat2& K, const Mat2& T);

/// Same quantity computed as T^-1 Z T^-T; used to cross-check the first route.
SymMat2 transform_covariance_via_Z(const SymMat2& Z, const Mat2& T);

/// Energies from the second moments. With `include_classical_motion` the
/// mean-motion (alpha, beta) contributions are added to every term.
EnergyReport energies(const GaussianEnsembleState& state, const ModelParams& params,
                      bool include_classical_motion = false);

/// Energies from explicit position/momentum covariances and means; shared
/// by the grid verifier, which measures Z and Pi by quadrature.
EnergyReport energies_from_moments(const SymMat2& Z, const SymMat2& Pi, Vec2 alpha, Vec2 beta,
                                   const ModelParams& params, bool include_classical_motion);

/// Classical energy carried by the mean motion: M b^2/2 + k c^2/2.
double mean_motion_energy(const MeanMotionConstants& consts, const ModelParams& params);

EllipseSpec error_ellipse(const SymMat2& Z, Vec2 center);

ProductMoments product_moments(const GaussianEnsembleState& state, const ModelParams& params);

/// Expectation of the center-of-mass / relative cross term of the ensemble
/// Hamiltonian, (hbar^2/4M) * int (d_R P)(d_r P)/P, which for a Gaussian
/// reduces to (hbar^2/4M) K'_Rr with K' = T^T K T. Only the hybrid sector
/// has this term; other sectors return 0.
double cm_relative_coupling(const GaussianEnsembleState& state, const ModelParams& params);

}  // namespace hybrid
