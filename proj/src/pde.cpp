#include "hybrid/pde.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "hybrid/errors.hpp"
#include "hybrid/pde_kernels.hpp"

namespace hybrid {

namespace k = kernels;
using cplx = std::complex<double>;

namespace {

// the FFTW planner is not thread safe; fftw_execute is
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

fftw_complex* raw(std::vector<cplx>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

Plan plan_2d(std::vector<cplx>& buf, std::size_t n, int sign) {
  const int ni = static_cast<int>(n);
  const std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft_2d(ni, ni, raw(buf), raw(buf), sign, FFTW_ESTIMATE));
}

// 1D transforms along x (stride n) for each of the n q-columns.
Plan plan_along_x(std::vector<cplx>& buf, std::size_t n, int sign) {
  int ni = static_cast<int>(n);
  const std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_many_dft(1, &ni, ni, raw(buf), nullptr, ni, 1, raw(buf), nullptr, ni, 1,
                                 sign, FFTW_ESTIMATE));
}

// Angular wavenumbers in FFT order.
std::vector<double> wavenumbers(const GridSpec& g) {
  const std::size_t n = g.points;
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * g.spacing());
  std::vector<double> kv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<double>(i);
    kv[i] = (i < n / 2) ? j * dk : (j - static_cast<double>(n)) * dk;
  }
  return kv;
}

k::Axis axis(const GridSpec& g) { return {-g.half_width, g.spacing()}; }

double floor_of(std::span<const cplx> psi) { return 1e-12 * std::sqrt(k::omp::max_abs2(psi)); }

}  // namespace

void validate(const GridSpec& g) {
  if (g.points < 64 || !std::has_single_bit(g.points))
    throw InvalidParameter("grid points per axis must be a power of two >= 64");
  if (!(g.half_width > 0.0) || !std::isfinite(g.half_width))
    throw InvalidParameter("grid half_width must be > 0");
  if (!(g.dt > 0.0) || !std::isfinite(g.dt)) throw InvalidParameter("grid dt must be > 0");
}

double WaveField::norm() const {
  const double dA = grid.spacing() * grid.spacing();
  double s = 0.0;
  for (const auto& v : psi) s += std::norm(v);
  return s * dA;
}

WaveField init_wavefield(const GaussianEnsembleState& s, const ModelParams& params,
                         const GridSpec& grid) {
  validate(grid);
  validate(s);
  const SymMat2 Z = inverse(s.K);
  const double sd_max = std::sqrt(eigen(Z).major);
  if (grid.half_width < 6.0 * sd_max) {
    std::ostringstream os;
    os << "grid half_width " << grid.half_width << " < 6 x largest standard deviation " << sd_max;
    throw GridTooSmall(os.str());
  }

  const std::size_t n = grid.points;
  const double hbar = params.hbar();
  const double amp0 = std::sqrt(std::sqrt(s.K.det()) / (2.0 * std::numbers::pi));
  WaveField f{grid, s.t, std::vector<cplx>(n * n)};
  for (std::size_t ix = 0; ix < n; ++ix) {
    const double dx = grid.coordinate(ix) - s.alpha.x;
    for (std::size_t iq = 0; iq < n; ++iq) {
      const Vec2 d{grid.coordinate(iq) - s.alpha.q, dx};
      const double quad_K = dot(d, s.K * d);
      const double phase = (0.5 * dot(d, s.L * d) + dot(s.beta, d) + s.sigma) / hbar;
      f.psi[ix * n + iq] = std::polar(amp0 * std::exp(-0.25 * quad_K), phase);
    }
  }
  k::omp::scale(f.psi, 1.0 / std::sqrt(f.norm()));

  const double edge = k::serial::boundary_max_abs2(f.psi, n) / k::omp::max_abs2(f.psi);
  if (edge >= 1e-8) {
    std::ostringstream os;
    os << "edge density is " << edge << " of peak (must be < 1e-8)";
    throw GridTooSmall(os.str());
  }
  return f;
}

namespace {

class SplitStep {
 public:
  SplitStep(const GridSpec& g, const ModelParams& p, double dt, NonlinearTerm method)
      : n_(g.points),
        hbar_(p.hbar()),
        dt_(dt),
        hybrid_(p.sector() == SectorKind::Hybrid),
        qcoef_(p.hbar() * p.hbar() / (2.0 * p.m_x())),
        work_(n_ * n_),
        spring_(n_ * n_),
        potential_(n_ * n_),
        kinetic_(n_ * n_),
        d2x_(n_ * n_),
        dx_(g.spacing()),
        method_(method),
        logmod_(method == NonlinearTerm::LogDifference ? n_ * n_ : 0) {
    const std::vector<double> kv = wavenumbers(g);
    const double norm2d = 1.0 / static_cast<double>(n_ * n_);
    // Split-step modes of the classical coordinate with hbar k^2 dt / 2m_x
    // beyond pi are unstable (the nonlinear term cancels the x dispersion only
    // in the continuum); x-modes past pi/2 are projected out each step.
    const double kx_cut = hybrid_ ? std::sqrt(std::numbers::pi * p.m_x() / (p.hbar() * dt))
                                  : std::numeric_limits<double>::infinity();
    for (std::size_t ix = 0; ix < n_; ++ix) {
      const double x = g.coordinate(ix);
      for (std::size_t iq = 0; iq < n_; ++iq) {
        const double r = g.coordinate(iq) - x;
        const std::size_t i = ix * n_ + iq;
        spring_[i] = 0.5 * p.k() * r * r;
        const double energy =
            hbar_ * hbar_ * (kv[iq] * kv[iq] / (2.0 * p.m_q()) + kv[ix] * kv[ix] / (2.0 * p.m_x()));
        kinetic_[i] = std::abs(kv[ix]) > kx_cut ? cplx{} : std::polar(norm2d, -energy * dt_ / hbar_);
        d2x_[i] = -kv[ix] * kv[ix] / static_cast<double>(n_);
      }
    }
  }

  void bind(std::vector<cplx>& psi) {
    fwd_ = plan_2d(psi, n_, FFTW_FORWARD);
    bwd_ = plan_2d(psi, n_, FFTW_BACKWARD);
    work_fwd_x_ = plan_along_x(work_, n_, FFTW_FORWARD);
    work_bwd_x_ = plan_along_x(work_, n_, FFTW_BACKWARD);
  }

  void step(std::vector<cplx>& psi) {
    half_potential(psi);
    fftw_execute(fwd_.get());
    k::omp::multiply(psi, kinetic_);
    fftw_execute(bwd_.get());
    half_potential(psi);
  }

 private:
  void half_potential(std::vector<cplx>& psi) {
    if (!hybrid_) {
      k::omp::apply_phase(psi, spring_, 0.5 * dt_ / hbar_);
      return;
    }
    if (method_ == NonlinearTerm::LogDifference) {
      k::omp::log_curvature(spring_, psi, n_, dx_, qcoef_, floor_of(psi), logmod_, potential_);
      k::omp::apply_phase(psi, potential_, 0.5 * dt_ / hbar_);
      return;
    }
    // d_x^2 |psi| spectrally, then V + (hbar^2/2m_x) d_x^2|psi| / |psi|
    k::omp::modulus(psi, work_);
    fftw_execute(work_fwd_x_.get());
    k::omp::multiply(work_, d2x_);
    fftw_execute(work_bwd_x_.get());
    k::omp::quantum_quotient(spring_, work_, psi, qcoef_, floor_of(psi), potential_);
    k::omp::apply_phase(psi, potential_, 0.5 * dt_ / hbar_);
  }

  std::size_t n_;
  double hbar_;
  double dt_;
  bool hybrid_;
  double qcoef_;
  std::vector<cplx> work_;
  std::vector<double> spring_;
  std::vector<double> potential_;
  std::vector<cplx> kinetic_;
  std::vector<cplx> d2x_;
  double dx_;
  NonlinearTerm method_;
  std::vector<double> logmod_;
  Plan fwd_, bwd_, work_fwd_x_, work_bwd_x_;
};

}  // namespace

WaveField propagate_pde(WaveField field, const ModelParams& params, double t_final,
                        const PdeOptions& opts) {
  validate(field.grid);
  if (params.sector() == SectorKind::Classical)
    throw InvalidParameter("the grid verifier supports the hybrid and quantum sectors only");
  if (!(t_final >= field.t)) throw InvalidParameter("t_final must be >= field time");
  const double span = t_final - field.t;
  if (span == 0.0) return field;

  const auto steps = static_cast<long>(std::ceil(span / field.grid.dt * (1.0 - 1e-12)));
  const double dt = span / static_cast<double>(steps);
  const std::size_t n = field.grid.points;

  SplitStep solver(field.grid, params, dt, opts.nonlinear);
  solver.bind(field.psi);
  const double norm0 = field.norm();
  const double t0 = field.t;

  for (long s = 1; s <= steps; ++s) {
    solver.step(field.psi);
    field.t = t0 + static_cast<double>(s) * dt;

    const double drift = std::abs(field.norm() - norm0) / norm0;
    if (drift > opts.norm_tolerance) {
      std::ostringstream os;
      os << "norm drifted by " << drift << " at t = " << field.t;
      throw NormDrift(os.str());
    }
    const double edge = k::serial::boundary_max_abs2(field.psi, n) / k::omp::max_abs2(field.psi);
    if (edge > opts.boundary_threshold) {
      std::ostringstream os;
      os << "edge density reached " << edge << " of peak at t = " << field.t;
      throw BoundaryLeak(os.str());
    }
  }
  field.t = t_final;
  return field;
}

GridMoments extract_moments(const WaveField& field, const ModelParams& params) {
  validate(field.grid);
  const GridSpec& g = field.grid;
  const std::size_t n = g.points;
  const double hbar = params.hbar();
  const double dA = g.spacing() * g.spacing();

  GridMoments m;
  const k::WeightedSums ds = k::omp::density_sums(field.psi, n, axis(g), axis(g));
  m.norm = ds.w * dA;
  m.mean = {ds.q / ds.w, ds.x / ds.w};
  m.Z = {ds.qq / ds.w - m.mean.q * m.mean.q, ds.qx / ds.w - m.mean.q * m.mean.x,
         ds.xx / ds.w - m.mean.x * m.mean.x};
  m.qx_mean = ds.qx / ds.w;

  std::vector<cplx> spec = field.psi;
  {
    Plan fwd = plan_2d(spec, n, FFTW_FORWARD);
    fftw_execute(fwd.get());
  }
  const std::vector<double> kv = wavenumbers(g);
  const k::WeightedSums ss = k::omp::spectral_sums(spec, kv);
  const Vec2 p_spec{hbar * ss.q / ss.w, hbar * ss.x / ss.w};
  const double h2 = hbar * hbar;
  const SymMat2 pp_spec{h2 * ss.qq / ss.w, h2 * ss.qx / ss.w, h2 * ss.xx / ss.w};

  if (params.sector() == SectorKind::Quantum) {
    m.momentum_mean = p_spec;
    m.pqpx_mean = pp_spec.qx;
  } else {
    // first derivatives (Nyquist mode dropped)
    std::vector<cplx> dq(n * n), dx(n * n);
    const double inv = 1.0 / static_cast<double>(n * n);
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double kx = (ix == n / 2) ? 0.0 : kv[ix];
      for (std::size_t iq = 0; iq < n; ++iq) {
        const double kq = (iq == n / 2) ? 0.0 : kv[iq];
        const std::size_t i = ix * n + iq;
        dq[i] = cplx(0.0, kq * inv) * spec[i];
        dx[i] = cplx(0.0, kx * inv) * spec[i];
      }
    }
    {
      Plan bq = plan_2d(dq, n, FFTW_BACKWARD);
      fftw_execute(bq.get());
      Plan bx = plan_2d(dx, n, FFTW_BACKWARD);
      fftw_execute(bx.get());
    }
    const double fl = floor_of(field.psi);
    const k::CurrentSums cs = k::omp::current_sums(field.psi, dq, dx, fl * fl);
    m.floored_points = cs.skipped;
    // <p_q^2> is the quantum (operator) moment; p_x and the mixed product use
    // the phase gradient.
    m.momentum_mean = {p_spec.q, hbar * cs.jx / ds.w};
    const double px2 = h2 * cs.xx / ds.w;
    m.pqpx_mean = h2 * cs.qx / ds.w;
    m.Pi = {pp_spec.qq - p_spec.q * p_spec.q, m.pqpx_mean - m.momentum_mean.q * m.momentum_mean.x,
            px2 - m.momentum_mean.x * m.momentum_mean.x};
  }
  if (params.sector() == SectorKind::Quantum) {
    m.Pi = {pp_spec.qq - p_spec.q * p_spec.q, pp_spec.qx - p_spec.q * p_spec.x,
            pp_spec.xx - p_spec.x * p_spec.x};
  }
  m.energies = energies_from_moments(m.Z, m.Pi, m.mean, m.momentum_mean, params, false);
  return m;
}

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

}  // namespace

void write_snapshot(const WaveField& field, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw EngineError("cannot open snapshot file " + path.string());
  os.write("HYBPSI01", 8);
  const auto n = static_cast<std::uint32_t>(field.grid.points);
  put_le<std::uint32_t>(os, n);  // q points
  put_le<std::uint32_t>(os, n);  // x points
  put_le<double>(os, field.grid.half_width);
  put_le<double>(os, field.grid.half_width);
  put_le<double>(os, field.t);
  for (const auto& v : field.psi) put_le<double>(os, std::norm(v));
  if (!os) throw EngineError("failed writing snapshot " + path.string());
}

}  // namespace hybrid
