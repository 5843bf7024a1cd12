#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "hybrid/dynamics.hpp"

namespace hybrid {

/// First and second moments of a classical phase-space ensemble, ordered
/// (q, x, p_q, p_x).
struct PhaseSpaceMoments {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
};

/// Moments of the classical ensemble described by a Gaussian state: the
/// momentum field is p = L (xi - alpha) + beta, so Cov(xi, p) = Z L and
/// Cov(p) = L Z L (a rank-2 covariance).
PhaseSpaceMoments classical_moments(const GaussianEnsembleState& s);

/// 4x4 fundamental matrix of the coupled-oscillator flow over time t,
/// assembled from the free center-of-mass and harmonic relative motions.
Eigen::Matrix4d fundamental_matrix(const ModelParams& params, double t);

/// Exact linear propagation: mean -> Phi mean, cov -> Phi cov Phi^T.
PhaseSpaceMoments classical_moment_propagate(const PhaseSpaceMoments& m0,
                                             const ModelParams& params, double t);

/// Closed-form quantum evolution of Z' = Cov(R, r) for a state whose K' and
/// L' are diagonal in the center-of-mass / relative frame (throws
/// PreconditionViolated otherwise, or if the sector is not Quantum).
/// `t` is measured from state0.t.
SymMat2 quantum_analytic_covariance(const GaussianEnsembleState& state0, const ModelParams& params,
                                    double t);

/// True if K' and L' of `s` are diagonal in the CM/relative frame.
bool frame_diagonal(const GaussianEnsembleState& s, const ModelParams& params);

struct ConsistencyReport {
  bool oracle_available = false;
  std::string oracle;  // "quantum-analytic", "classical-moments" or "none"
  std::size_t samples_compared = 0;
  double max_deviation = 0.0;  // max abs deviation of compared covariance entries
  std::string note;
};

/// Compares a trajectory from integrate() against the oracle matching its
/// sector: quantum -> closed form in the CM/relative frame over all samples;
/// classical -> moment propagation for samples with t - t0 <= T/8;
/// hybrid -> no oracle.
ConsistencyReport hybrid_consistency_check(const Trajectory& traj, const ModelParams& params);

}  // namespace hybrid
