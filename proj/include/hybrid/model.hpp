#pragma once

#include <string>
#include <string_view>

#include "hybrid/linalg.hpp"

namespace hybrid {

/// Which coordinates carry the quantum-potential term.
enum class SectorKind { Hybrid, Quantum, Classical };

std::string_view to_string(SectorKind s);
SectorKind parse_sector(std::string_view name);  // throws ConfigError

/// Masses, spring constant, hbar and sector. Construction validates.
class ModelParams {
 public:
  ModelParams(double m_q, double m_x, double k, double hbar = 1.0,
              SectorKind sector = SectorKind::Hybrid);

  double m_q() const { return m_q_; }
  double m_x() const { return m_x_; }
  double k() const { return k_; }
  double hbar() const { return hbar_; }
  SectorKind sector() const { return sector_; }

  double total_mass() const { return m_q_ + m_x_; }
  double reduced_mass() const { return m_q_ * m_x_ / (m_q_ + m_x_); }
  /// sqrt(k/mu); zero when k == 0.
  double omega() const;
  /// 2*pi/omega; requires k > 0.
  double period() const;
  /// Harmonic oscillator length sqrt(hbar/(mu*omega)); requires k > 0.
  double oscillator_length() const;

  ModelParams with_sector(SectorKind s) const { return {m_q_, m_x_, k_, hbar_, s}; }

 private:
  double m_q_;
  double m_x_;
  double k_;
  double hbar_;
  SectorKind sector_;
};

/// diag(1/m_q, 1/m_x)
SymMat2 build_U(const ModelParams& p);
/// k * [[1, -1], [-1, 1]]
SymMat2 build_C(const ModelParams& p);
/// Sector projector: Hybrid diag(1,0), Quantum identity, Classical zero.
SymMat2 build_E(SectorKind sector);

/// Complete dynamical state of the Gaussian ensemble
///   P ~ exp(-(xi-alpha)^T K (xi-alpha)/2),
///   S = (xi-alpha)^T L (xi-alpha)/2 + beta^T (xi-alpha) + sigma.
/// sigma is carried along unchanged; it never affects an observable.
struct GaussianEnsembleState {
  double t = 0.0;
  SymMat2 K = SymMat2::identity();
  SymMat2 L{};
  Vec2 alpha{};
  Vec2 beta{};
  double sigma = 0.0;
};

/// Throws InvalidParameter if K is not positive definite or any entry is
/// non-finite.
void validate(const GaussianEnsembleState& s);

/// Constants (a, b, c, phi) of the closed-form mean motion.
struct MeanMotionConstants {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double phi = 0.0;
};

}  // namespace hybrid
