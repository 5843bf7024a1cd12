#pragma once

// Pointwise and reduction kernels of the split-step grid solver. Each kernel
// exists twice with identical signatures: `serial` is the reference loop,
// `omp` the OpenMP-parallel version used by the solver. Grids are n*n,
// row-major with q fastest (index = ix*n + iq).

#include <complex>
#include <cstddef>
#include <span>

namespace hybrid::kernels {

using cplx = std::complex<double>;

/// Periodic grid axis: value(i) = start + i*step.
struct Axis {
  double start = 0.0;
  double step = 1.0;
  double value(std::size_t i) const { return start + static_cast<double>(i) * step; }
};

/// Raw sums of a weight field over the grid: sum w, sum w*q, ..., sum w*x*x.
struct WeightedSums {
  double w = 0.0;
  double q = 0.0, x = 0.0;
  double qq = 0.0, qx = 0.0, xx = 0.0;
};

/// Sums of the phase-gradient fields j_q = Im(conj(psi) d_q psi) and
/// j_x = Im(conj(psi) d_x psi). The quotient sums (j_a j_b / |psi|^2) skip
/// points with |psi|^2 < floor2; those are counted in `skipped`.
struct CurrentSums {
  double jq = 0.0, jx = 0.0;
  double qq = 0.0, qx = 0.0, xx = 0.0;
  long skipped = 0;
};

namespace serial {

/// psi *= exp(-i * scale * potential)
void apply_phase(std::span<cplx> psi, std::span<const double> potential, double scale);
void multiply(std::span<cplx> a, std::span<const cplx> b);
void scale(std::span<cplx> a, double s);
/// out = |psi| as a real-valued complex field
void modulus(std::span<const cplx> psi, std::span<cplx> out);
/// out = base + coeff * Re(d2) / max(|psi|, floor)
void quantum_quotient(std::span<const double> base, std::span<const cplx> d2,
                      std::span<const cplx> psi, double coeff, double floor,
                      std::span<double> out);
/// out = base + coeff * ((d_x ln A)^2 + d_x^2 ln A), A = max(|psi|, floor),
/// by second-order differences along x (one-sided on the first/last row).
/// Exact for Gaussians up to the stencil error.
void log_curvature(std::span<const double> base, std::span<const cplx> psi, std::size_t n,
                   double dx, double coeff, double floor, std::span<double> work,
                   std::span<double> out);
double max_abs2(std::span<const cplx> psi);
/// Largest |psi|^2 on the outermost rows and columns.
double boundary_max_abs2(std::span<const cplx> psi, std::size_t n);
/// Sums with weight |psi|^2 at grid coordinates.
WeightedSums density_sums(std::span<const cplx> psi, std::size_t n, Axis q_axis, Axis x_axis);
/// Sums with weight |psi_hat|^2 at wavenumbers k[iq], k[ix].
WeightedSums spectral_sums(std::span<const cplx> psi_hat, std::span<const double> k);
CurrentSums current_sums(std::span<const cplx> psi, std::span<const cplx> dq,
                         std::span<const cplx> dx, double floor2);

}  // namespace serial

namespace omp {

void apply_phase(std::span<cplx> psi, std::span<const double> potential, double scale);
void multiply(std::span<cplx> a, std::span<const cplx> b);
void scale(std::span<cplx> a, double s);
void modulus(std::span<const cplx> psi, std::span<cplx> out);
void quantum_quotient(std::span<const double> base, std::span<const cplx> d2,
                      std::span<const cplx> psi, double coeff, double floor,
                      std::span<double> out);
void log_curvature(std::span<const double> base, std::span<const cplx> psi, std::size_t n,
                   double dx, double coeff, double floor, std::span<double> work,
                   std::span<double> out);
double max_abs2(std::span<const cplx> psi);
double boundary_max_abs2(std::span<const cplx> psi, std::size_t n);
WeightedSums density_sums(std::span<const cplx> psi, std::size_t n, Axis q_axis, Axis x_axis);
WeightedSums spectral_sums(std::span<const cplx> psi_hat, std::span<const double> k);
CurrentSums current_sums(std::span<const cplx> psi, std::span<const cplx> dq,
                         std::span<const cplx> dx, double floor2);

}  // namespace omp

}  // namespace hybrid::kernels
