#include "hybrid/pde_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hybrid::kernels {

namespace {

// Curvature term of row ix from the log-modulus field la.
inline void log_curvature_row(const double* la, const double* base, double* out, std::size_t ix,
                              std::size_t n, double dx, double coeff) {
  const double inv2 = 1.0 / (2.0 * dx), invsq = 1.0 / (dx * dx);
  const double* r = la + ix * n;
  for (std::size_t iq = 0; iq < n; ++iq) {
    double d1, d2;
    if (ix == 0) {
      const double f0 = r[iq], f1 = r[iq + n], f2 = r[iq + 2 * n];
      d1 = (-3.0 * f0 + 4.0 * f1 - f2) * inv2;
      d2 = (f0 - 2.0 * f1 + f2) * invsq;
    } else if (ix == n - 1) {
      const double f0 = r[iq], f1 = r[iq - n], f2 = r[iq - 2 * n];
      d1 = (3.0 * f0 - 4.0 * f1 + f2) * inv2;
      d2 = (f0 - 2.0 * f1 + f2) * invsq;
    } else {
      d1 = (r[iq + n] - r[iq - n]) * inv2;
      d2 = (r[iq + n] - 2.0 * r[iq] + r[iq - n]) * invsq;
    }
    out[ix * n + iq] = base[ix * n + iq] + coeff * (d1 * d1 + d2);
  }
}

}  // namespace


namespace {

inline cplx phase_factor(double angle) { return {std::cos(angle), -std::sin(angle)}; }

inline double im_conj_mul(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

}  // namespace

// ---------------------------------------------------------------------------
// serial reference

namespace serial {

void apply_phase(std::span<cplx> psi, std::span<const double> potential, double scale) {
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= phase_factor(scale * potential[i]);
}

void multiply(std::span<cplx> a, std::span<const cplx> b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

void scale(std::span<cplx> a, double s) {
  for (auto& v : a) v *= s;
}

void modulus(std::span<const cplx> psi, std::span<cplx> out) {
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = std::abs(psi[i]);
}

void quantum_quotient(std::span<const double> base, std::span<const cplx> d2,
                      std::span<const cplx> psi, double coeff, double floor,
                      std::span<double> out) {
  for (std::size_t i = 0; i < psi.size(); ++i)
    out[i] = base[i] + coeff * d2[i].real() / std::max(std::abs(psi[i]), floor);
}

void log_curvature(std::span<const double> base, std::span<const cplx> psi, std::size_t n,
                   double dx, double coeff, double floor, std::span<double> work,
                   std::span<double> out) {
  for (std::size_t i = 0; i < psi.size(); ++i) work[i] = std::log(std::max(std::abs(psi[i]), floor));
  for (std::size_t ix = 0; ix < n; ++ix)
    log_curvature_row(work.data(), base.data(), out.data(), ix, n, dx, coeff);
}

double max_abs2(std::span<const cplx> psi) {
  double m = 0.0;
  for (const auto& v : psi) m = std::max(m, std::norm(v));
  return m;
}

double boundary_max_abs2(std::span<const cplx> psi, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max({m, std::norm(psi[i]), std::norm(psi[(n - 1) * n + i]), std::norm(psi[i * n]),
                  std::norm(psi[i * n + n - 1])});
  }
  return m;
}

WeightedSums density_sums(std::span<const cplx> psi, std::size_t n, Axis qa, Axis xa) {
  WeightedSums s;
  for (std::size_t ix = 0; ix < n; ++ix) {
    const double x = xa.value(ix);
    for (std::size_t iq = 0; iq < n; ++iq) {
      const double q = qa.value(iq);
      const double w = std::norm(psi[ix * n + iq]);
      s.w += w;
      s.q += w * q;
      s.x += w * x;
      s.qq += w * q * q;
      s.qx += w * q * x;
      s.xx += w * x * x;
    }
  }
  return s;
}

WeightedSums spectral_sums(std::span<const cplx> psi_hat, std::span<const double> k) {
  const std::size_t n = k.size();
  WeightedSums s;
  for (std::size_t ix = 0; ix < n; ++ix) {
    const double kx = k[ix];
    for (std::size_t iq = 0; iq < n; ++iq) {
      const double kq = k[iq];
      const double w = std::norm(psi_hat[ix * n + iq]);
      s.w += w;
      s.q += w * kq;
      s.x += w * kx;
      s.qq += w * kq * kq;
      s.qx += w * kq * kx;
      s.xx += w * kx * kx;
    }
  }
  return s;
}

CurrentSums current_sums(std::span<const cplx> psi, std::span<const cplx> dq,
                         std::span<const cplx> dx, double floor2) {
  CurrentSums s;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double jq = im_conj_mul(psi[i], dq[i]);
    const double jx = im_conj_mul(psi[i], dx[i]);
    s.jq += jq;
    s.jx += jx;
    const double rho = std::norm(psi[i]);
    if (rho < floor2) {
      ++s.skipped;
      continue;
    }
    s.qq += jq * jq / rho;
    s.qx += jq * jx / rho;
    s.xx += jx * jx / rho;
  }
  return s;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP

namespace omp {

void apply_phase(std::span<cplx> psi, std::span<const double> potential, double scale) {
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) psi[i] *= phase_factor(scale * potential[i]);
}

void multiply(std::span<cplx> a, std::span<const cplx> b) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) a[i] *= b[i];
}

void scale(std::span<cplx> a, double s) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) a[i] *= s;
}

void modulus(std::span<const cplx> psi, std::span<cplx> out) {
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = std::abs(psi[i]);
}

void quantum_quotient(std::span<const double> base, std::span<const cplx> d2,
                      std::span<const cplx> psi, double coeff, double floor,
                      std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = base[i] + coeff * d2[i].real() / std::max(std::abs(psi[i]), floor);
}

void log_curvature(std::span<const double> base, std::span<const cplx> psi, std::size_t n,
                   double dx, double coeff, double floor, std::span<double> work,
                   std::span<double> out) {
  const auto total = static_cast<std::ptrdiff_t>(psi.size());
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i)
      work[i] = std::log(std::max(std::abs(psi[i]), floor));
#pragma omp for schedule(static)
    for (std::ptrdiff_t ix = 0; ix < rows; ++ix)
      log_curvature_row(work.data(), base.data(), out.data(), static_cast<std::size_t>(ix), n,
                        dx, coeff);
  }
}

double max_abs2(std::span<const cplx> psi) {
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::norm(psi[i]));
  return m;
}

double boundary_max_abs2(std::span<const cplx> psi, std::size_t n) {
  // O(n) work; not worth a parallel region.
  return serial::boundary_max_abs2(psi, n);
}

WeightedSums density_sums(std::span<const cplx> psi, std::size_t n, Axis qa, Axis xa) {
  double w = 0, sq = 0, sx = 0, sqq = 0, sqx = 0, sxx = 0;
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : w, sq, sx, sqq, sqx, sxx)
  for (std::ptrdiff_t ix = 0; ix < rows; ++ix) {
    const double x = xa.value(static_cast<std::size_t>(ix));
    for (std::size_t iq = 0; iq < n; ++iq) {
      const double q = qa.value(iq);
      const double p = std::norm(psi[static_cast<std::size_t>(ix) * n + iq]);
      w += p;
      sq += p * q;
      sx += p * x;
      sqq += p * q * q;
      sqx += p * q * x;
      sxx += p * x * x;
    }
  }
  return {w, sq, sx, sqq, sqx, sxx};
}

WeightedSums spectral_sums(std::span<const cplx> psi_hat, std::span<const double> k) {
  const std::size_t n = k.size();
  double w = 0, sq = 0, sx = 0, sqq = 0, sqx = 0, sxx = 0;
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : w, sq, sx, sqq, sqx, sxx)
  for (std::ptrdiff_t ix = 0; ix < rows; ++ix) {
    const double kx = k[static_cast<std::size_t>(ix)];
    for (std::size_t iq = 0; iq < n; ++iq) {
      const double kq = k[iq];
      const double p = std::norm(psi_hat[static_cast<std::size_t>(ix) * n + iq]);
      w += p;
      sq += p * kq;
      sx += p * kx;
      sqq += p * kq * kq;
      sqx += p * kq * kx;
      sxx += p * kx * kx;
    }
  }
  return {w, sq, sx, sqq, sqx, sxx};
}

CurrentSums current_sums(std::span<const cplx> psi, std::span<const cplx> dq,
                         std::span<const cplx> dx, double floor2) {
  double sjq = 0, sjx = 0, sqq = 0, sqx = 0, sxx = 0;
  long skipped = 0;
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static) reduction(+ : sjq, sjx, sqq, sqx, sxx, skipped)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double jq = im_conj_mul(psi[i], dq[i]);
    const double jx = im_conj_mul(psi[i], dx[i]);
    sjq += jq;
    sjx += jx;
    const double rho = std::norm(psi[i]);
    if (rho < floor2) {
      ++skipped;
      continue;
    }
    sqq += jq * jq / rho;
    sqx += jq * jx / rho;
    sxx += jx * jx / rho;
  }
  return {sjq, sjx, sqq, sqx, sxx, skipped};
}

}  // namespace omp

}  // namespace hybrid::kernels
