#include "hybrid/model.hpp"

#include <cmath>
#include <numbers>

#include "hybrid/errors.hpp"

namespace hybrid {

std::string_view to_string(SectorKind s) {
  switch (s) {
    case SectorKind::Hybrid: return "hybrid";
    case SectorKind::Quantum: return "quantum";
    case SectorKind::Classical: return "classical";
  }
  return "?";
}

SectorKind parse_sector(std::string_view name) {
  if (name == "hybrid") return SectorKind::Hybrid;
  if (name == "quantum") return SectorKind::Quantum;
  if (name == "classical") return SectorKind::Classical;
  throw ConfigError("unknown sector '" + std::string(name) + "' (expected hybrid|quantum|classical)");
}

ModelParams::ModelParams(double m_q, double m_x, double k, double hbar, SectorKind sector)
    : m_q_(m_q), m_x_(m_x), k_(k), hbar_(hbar), sector_(sector) {
  if (!(m_q > 0.0) || !std::isfinite(m_q)) throw InvalidParameter("m_q must be > 0");
  if (!(m_x > 0.0) || !std::isfinite(m_x)) throw InvalidParameter("m_x must be > 0");
  if (!(k >= 0.0) || !std::isfinite(k)) throw InvalidParameter("k must be >= 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidParameter("hbar must be > 0");
}

double ModelParams::omega() const { return std::sqrt(k_ / reduced_mass()); }

double ModelParams::period() const {
  if (k_ <= 0.0) throw InvalidParameter("period undefined for k == 0");
  return 2.0 * std::numbers::pi / omega();
}

double ModelParams::oscillator_length() const {
  if (k_ <= 0.0) throw InvalidParameter("oscillator length undefined for k == 0");
  return std::sqrt(hbar_ / (reduced_mass() * omega()));
}

SymMat2 build_U(const ModelParams& p) { return SymMat2::diag(1.0 / p.m_q(), 1.0 / p.m_x()); }

SymMat2 build_C(const ModelParams& p) { return {p.k(), -p.k(), p.k()}; }

SymMat2 build_E(SectorKind sector) {
  switch (sector) {
    case SectorKind::Hybrid: return SymMat2::diag(1.0, 0.0);
    case SectorKind::Quantum: return SymMat2::identity();
    case SectorKind::Classical: return SymMat2{};
  }
  return SymMat2{};
}

void validate(const GaussianEnsembleState& s) {
  const double entries[] = {s.t,       s.K.qq,    s.K.qx,    s.K.xx,    s.L.qq,   s.L.qx,
                            s.L.xx,    s.alpha.q, s.alpha.x, s.beta.q,  s.beta.x, s.sigma};
  for (double v : entries)
    if (!std::isfinite(v)) throw InvalidParameter("state contains a non-finite entry");
  if (!is_positive_definite(s.K)) throw InvalidParameter("K must be positive definite");
}

}  // namespace hybrid
