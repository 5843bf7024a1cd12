#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "hybrid/model.hpp"
#include "hybrid/observables.hpp"

namespace hybrid {

/// Square periodic grid over [-half_width, half_width) on both axes.
struct GridSpec {
  double half_width = 8.0;
  std::size_t points = 256;  // per axis; power of two, >= 64
  double dt = 0.05;  // hybrid runs below ~0.03 are less stable, see README

  double spacing() const { return 2.0 * half_width / static_cast<double>(points); }
  double coordinate(std::size_t i) const { return -half_width + static_cast<double>(i) * spacing(); }
};

/// Throws InvalidParameter on a malformed grid.
void validate(const GridSpec& grid);

/// psi = sqrt(P) exp(iS/hbar) sampled on the grid; index ix*points + iq.
struct WaveField {
  GridSpec grid;
  double t = 0.0;
  std::vector<std::complex<double>> psi;

  /// Discrete quadrature of |psi|^2.
  double norm() const;
};

/// Samples the Gaussian state on the grid and normalizes it by quadrature.
/// Throws GridTooSmall if the density on the grid edge exceeds 1e-8 of its
/// peak, or if half_width < 6 standard deviations.
WaveField init_wavefield(const GaussianEnsembleState& state, const ModelParams& params,
                         const GridSpec& grid);

/// How the hybrid nonlinear term (d_x^2 |psi|)/|psi| is evaluated.
///  LogDifference: (d_x ln|psi|)^2 + d_x^2 ln|psi| by finite differences.
///    Exact on Gaussians, so errors stay local; survives much longer runs.
///  SpectralModulus: FFT second derivative of |psi|, divided by |psi|. Accurate
///    while the state is well inside the box, but edge noise divided by a tiny
///    |psi| grows, and runs past about T/8 usually hit NormDrift/BoundaryLeak.
enum class NonlinearTerm { LogDifference, SpectralModulus };

struct PdeOptions {
  NonlinearTerm nonlinear = NonlinearTerm::LogDifference;
  double norm_tolerance = 1e-4;      // NormDrift above this
  double boundary_threshold = 1e-6;  // BoundaryLeak when edge density / peak exceeds this
};

/// Strang split-step evolution to t_final (the step is grid.dt shortened so
/// the final time is hit exactly). Kinetic terms are applied spectrally; the
/// spring potential and, in the hybrid sector, the nonlinear term
/// (hbar^2/2m_x) (d_x^2 |psi|)/|psi| act as position-space phases. The
/// quantum sector is plain two-particle Schroedinger evolution. The classical
/// sector is not supported (InvalidParameter).
WaveField propagate_pde(WaveField field, const ModelParams& params, double t_final,
                        const PdeOptions& opts = {});

/// Moments measured on the grid.
struct GridMoments {
  double norm = 0.0;
  Vec2 mean;           // <q>, <x>
  Vec2 momentum_mean;  // <p_q>, <p_x>
  SymMat2 Z;           // position covariance
  SymMat2 Pi;          // momentum covariance
  double qx_mean = 0.0;
  double pqpx_mean = 0.0;
  long floored_points = 0;  // excluded from phase-gradient quotients
  EnergyReport energies;    // fluctuation energies (mean motion excluded)
};

/// Position moments by quadrature of |psi|^2. Momentum moments of quantum
/// coordinates by spectral quadrature; of classical coordinates, and mixed
/// classical-quantum products, from the phase gradient computed via
/// Im(conj(psi) d psi)/|psi|^2 (no phase unwrapping).
GridMoments extract_moments(const WaveField& field, const ModelParams& params);

/// Writes |psi|^2 with a fixed header; see README for the layout.
void write_snapshot(const WaveField& field, const std::filesystem::path& path);

}  // namespace hybrid
