#include "hybrid/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include <boost/numeric/odeint.hpp>

#include "hybrid/errors.hpp"

namespace hybrid {

namespace odeint = boost::numeric::odeint;

SymMat2 rhs_K(const SymMat2& K, const SymMat2& L, const SymMat2& U) {
  // K U L + (K U L)^T == K U L + L U K
  const SymMat2 s = symmetrize(K * U * Mat2::from(L));
  return -2.0 * s;
}

SymMat2 rhs_L(const SymMat2& K, const SymMat2& L, const SymMat2& U, const SymMat2& C,
              const SymMat2& E, double hbar) {
  const SymMat2 LUL = congruence(Mat2::from(L), U);
  const SymMat2 KEUEK = congruence(K * E, U);
  return -LUL - C + (0.25 * hbar * hbar) * KEUEK;
}

std::pair<Vec2, Vec2> rhs_mean(Vec2 alpha, Vec2 beta, const SymMat2& U, const SymMat2& C) {
  const Vec2 Cb = C * alpha;
  return {U * beta, Vec2{-Cb.q, -Cb.x}};
}

GaussianEnsembleState rhs(const GaussianEnsembleState& s, const ModelParams& params) {
  const SymMat2 U = build_U(params);
  const SymMat2 C = build_C(params);
  const SymMat2 E = build_E(params.sector());
  GaussianEnsembleState d;
  d.t = 1.0;
  d.K = rhs_K(s.K, s.L, U);
  d.L = rhs_L(s.K, s.L, U, C, E, params.hbar());
  std::tie(d.alpha, d.beta) = rhs_mean(s.alpha, s.beta, U, C);
  d.sigma = 0.0;
  return d;
}

namespace {

using OdeState = std::array<double, 10>;

OdeState pack(const GaussianEnsembleState& s) {
  return {s.K.qq, s.K.qx, s.K.xx, s.L.qq, s.L.qx, s.L.xx, s.alpha.q, s.alpha.x, s.beta.q, s.beta.x};
}

GaussianEnsembleState unpack(const OdeState& y, double t, double sigma) {
  GaussianEnsembleState s;
  s.t = t;
  s.K = {y[0], y[1], y[2]};
  s.L = {y[3], y[4], y[5]};
  s.alpha = {y[6], y[7]};
  s.beta = {y[8], y[9]};
  s.sigma = sigma;
  return s;
}

double max_abs(const SymMat2& m) {
  return std::max({std::abs(m.qq), std::abs(m.qx), std::abs(m.xx)});
}

// K growing by this factor means an eigenvalue of Z = K^-1 has collapsed by
// the same factor; treated as loss of definiteness.
constexpr double kDivergenceFactor = 1e10;

std::string at_time(const char* what, double t) {
  std::ostringstream os;
  os << what << " at t = " << t;
  return os.str();
}

}  // namespace

std::vector<double> uniform_output_times(double t0, double t_final, const ModelParams& params,
                                         int samples_per_period) {
  if (samples_per_period < 1) throw InvalidParameter("samples_per_period must be >= 1");
  if (!(t_final >= t0)) throw InvalidParameter("t_final must be >= t0");
  const double span = params.k() > 0.0 ? params.period() : (t_final - t0);
  std::vector<double> times;
  if (span <= 0.0) return {t0};
  const double dt = span / samples_per_period;
  const auto n = static_cast<long>(std::floor((t_final - t0) / dt * (1.0 + 1e-12)));
  times.reserve(static_cast<std::size_t>(n) + 2);
  for (long i = 0; i <= n; ++i) times.push_back(t0 + static_cast<double>(i) * dt);
  if (t_final - times.back() > 1e-12 * std::max(1.0, std::abs(t_final))) times.push_back(t_final);
  else times.back() = std::min(times.back(), t_final);
  return times;
}

Trajectory integrate(const GaussianEnsembleState& state0, const ModelParams& params,
                     double t_final, std::vector<double> output_times,
                     const IntegratorConfig& cfg) {
  validate(state0);
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.max_step > 0.0) ||
      !(cfg.initial_step > 0.0))
    throw InvalidParameter("integrator tolerances and step sizes must be > 0");
  if (!(t_final >= state0.t)) throw InvalidParameter("t_final must be >= state0.t");
  if (output_times.empty()) output_times = uniform_output_times(state0.t, t_final, params);
  for (std::size_t i = 0; i < output_times.size(); ++i) {
    const double ti = output_times[i];
    if (ti < state0.t || ti > t_final) throw InvalidParameter("output time outside [t0, t_final]");
    if (i > 0 && !(ti > output_times[i - 1]))
      throw InvalidParameter("output times must be strictly increasing");
  }

  const SymMat2 U = build_U(params);
  const SymMat2 C = build_C(params);
  const SymMat2 E = build_E(params.sector());
  const double hbar = params.hbar();

  auto system = [&](const OdeState& y, OdeState& dydt, double /*t*/) {
    const SymMat2 K{y[0], y[1], y[2]};
    const SymMat2 L{y[3], y[4], y[5]};
    const SymMat2 dK = rhs_K(K, L, U);
    const SymMat2 dL = rhs_L(K, L, U, C, E, hbar);
    const auto [da, db] = rhs_mean({y[6], y[7]}, {y[8], y[9]}, U, C);
    dydt = {dK.qq, dK.qx, dK.xx, dL.qq, dL.qx, dL.xx, da.q, da.x, db.q, db.x};
  };

  auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol,
                                         odeint::runge_kutta_dopri5<OdeState>());

  Trajectory traj{params, {}};
  traj.samples.reserve(output_times.size());

  OdeState y = pack(state0);
  double t = state0.t;
  double h = cfg.initial_step;
  const double k_scale = max_abs(state0.K);

  for (const double target : output_times) {
    while (target - t > 1e-13 * std::max(1.0, std::abs(target))) {
      double h_try = std::min({h, cfg.max_step, target - t});
      const bool clamped = h_try < h;
      const double t_before = t;
      const auto res = stepper.try_step(system, y, t, h_try);
      if (res == odeint::success) {
        const SymMat2 K{y[0], y[1], y[2]};
        bool finite = true;
        for (double v : y) finite = finite && std::isfinite(v);
        if (!finite || !is_positive_definite(K))
          throw PositiveDefinitenessLost(at_time("K is no longer positive definite", t), t);
        if (max_abs(K) > kDivergenceFactor * k_scale)
          throw PositiveDefinitenessLost(at_time("K diverged (position covariance collapsed)", t),
                                         t);
        h = clamped ? std::max(h, h_try) : h_try;
        if (target - t <= 1e-13 * std::max(1.0, std::abs(target))) t = target;
      } else {
        h = h_try;
        if (h < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_before))) {
          const SymMat2 K{y[0], y[1], y[2]};
          if (max_abs(K) > 1e6 * k_scale)
            throw PositiveDefinitenessLost(at_time("K diverging; step size underflow", t), t);
          throw StepSizeUnderflow(at_time("adaptive step size underflow", t), t);
        }
      }
    }
    traj.samples.push_back(unpack(y, target, state0.sigma));
  }
  return traj;
}

std::pair<Vec2, Vec2> analytic_mean(const MeanMotionConstants& c, const ModelParams& p, double t) {
  if (!(p.k() > 0.0)) throw InvalidParameter("analytic mean motion requires k > 0");
  const double mu = p.reduced_mass();
  const double w = p.omega();
  const double phase = w * t + c.phi;
  const double drift = c.a + c.b * t;
  const double cosine = c.c * mu * std::cos(phase);
  const double sine = c.c * mu * w * std::sin(phase);
  const Vec2 alpha{drift + cosine / p.m_q(), drift - cosine / p.m_x()};
  const Vec2 beta{c.b * p.m_q() - sine, c.b * p.m_x() + sine};
  return {alpha, beta};
}

MeanMotionConstants fit_mean_constants(Vec2 alpha0, Vec2 beta0, const ModelParams& p) {
  if (!(p.k() > 0.0)) throw InvalidParameter("mean motion constants require k > 0");
  const double M = p.total_mass();
  const double mu = p.reduced_mass();
  const double w = p.omega();
  MeanMotionConstants c;
  c.a = (p.m_q() * alpha0.q + p.m_x() * alpha0.x) / M;
  c.b = (beta0.q + beta0.x) / M;
  // r(0) = c cos(phi), p_r(0) = -c mu w sin(phi)
  const double r0 = alpha0.q - alpha0.x;
  const double pr0 = (p.m_x() * beta0.q - p.m_q() * beta0.x) / M;
  const double s = -pr0 / (mu * w);
  c.c = std::hypot(r0, s);
  c.phi = (c.c == 0.0) ? 0.0 : std::atan2(s, r0);
  return c;
}

}  // namespace hybrid
