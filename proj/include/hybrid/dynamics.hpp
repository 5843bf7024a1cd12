#pragma once

#include <utility>
#include <vector>

#include "hybrid/model.hpp"

namespace hybrid {

/// Adaptive Dormand-Prince 5(4) settings.
struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double initial_step = 1e-3;
};

/// Samples of the joint (K, L, alpha, beta) solution at requested times.
struct Trajectory {
  ModelParams params;
  std::vector<GaussianEnsembleState> samples;
};

// Right-hand sides of the Gaussian-ansatz ODE system.

/// dK/dt = -(K U L + L U K)
SymMat2 rhs_K(const SymMat2& K, const SymMat2& L, const SymMat2& U);

/// dL/dt = -L U L - C + (hbar^2/4) K E U E K
SymMat2 rhs_L(const SymMat2& K, const SymMat2& L, const SymMat2& U, const SymMat2& C,
              const SymMat2& E, double hbar);

/// (d alpha/dt, d beta/dt) = (U beta, -C alpha)
std::pair<Vec2, Vec2> rhs_mean(Vec2 alpha, Vec2 beta, const SymMat2& U, const SymMat2& C);

/// Time derivative of the whole state under `params` (sigma is inert).
GaussianEnsembleState rhs(const GaussianEnsembleState& s, const ModelParams& params);

/// `samples_per_period` equally spaced times per oscillator period covering
/// [t0, t_final], both ends included. For k == 0 the interval itself is used
/// as the "period".
std::vector<double> uniform_output_times(double t0, double t_final, const ModelParams& params,
                                         int samples_per_period = 64);

/// Integrates the coupled K, L, alpha, beta equations from state0 and records
/// the state at each of `output_times` (strictly increasing, within
/// [state0.t, t_final]). An empty list selects the default sampling of 64
/// per period.
///
/// Throws PositiveDefinitenessLost when K stops being positive definite or
/// diverges (the covariance collapses, as in the classical sector near a
/// quarter period), StepSizeUnderflow when the adaptive step becomes
/// meaningless for any other reason.
Trajectory integrate(const GaussianEnsembleState& state0, const ModelParams& params,
                     double t_final, std::vector<double> output_times = {},
                     const IntegratorConfig& cfg = {});

/// Closed-form classical mean motion. Requires k > 0.
std::pair<Vec2, Vec2> analytic_mean(const MeanMotionConstants& consts, const ModelParams& params,
                                    double t);

/// Inverts analytic_mean at t = 0. Requires k > 0. c >= 0; phi = 0 when c == 0.
MeanMotionConstants fit_mean_constants(Vec2 alpha0, Vec2 beta0, const ModelParams& params);

}  // namespace hybrid
