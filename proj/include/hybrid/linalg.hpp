#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace hybrid {

/// Column 2-vector over the (q, x) coordinate pair.
struct Vec2 {
  double q = 0.0;
  double x = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.q + b.q, a.x + b.x}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.q - b.q, a.x - b.x}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.q, s * a.x}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.q * b.q + a.x * b.x; }

/// 2x2 real symmetric matrix stored as its three independent entries.
/// Symmetry holds by construction; definiteness is checked by callers.
struct SymMat2 {
  double qq = 0.0;
  double qx = 0.0;
  double xx = 0.0;

  static constexpr SymMat2 identity() { return {1.0, 0.0, 1.0}; }
  static constexpr SymMat2 diag(double a, double b) { return {a, 0.0, b}; }

  constexpr double det() const { return qq * xx - qx * qx; }
  constexpr double trace() const { return qq + xx; }

  friend constexpr SymMat2 operator+(const SymMat2& a, const SymMat2& b) {
    return {a.qq + b.qq, a.qx + b.qx, a.xx + b.xx};
  }
  friend constexpr SymMat2 operator-(const SymMat2& a, const SymMat2& b) {
    return {a.qq - b.qq, a.qx - b.qx, a.xx - b.xx};
  }
  friend constexpr SymMat2 operator-(const SymMat2& a) { return {-a.qq, -a.qx, -a.xx}; }
  friend constexpr SymMat2 operator*(double s, const SymMat2& a) {
    return {s * a.qq, s * a.qx, s * a.xx};
  }
  friend constexpr Vec2 operator*(const SymMat2& a, Vec2 v) {
    return {a.qq * v.q + a.qx * v.x, a.qx * v.q + a.xx * v.x};
  }
  friend constexpr bool operator==(const SymMat2&, const SymMat2&) = default;
};

/// General (not necessarily symmetric) 2x2 matrix, row-major.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 from(const SymMat2& s) { return {s.qq, s.qx, s.qx, s.xx}; }

  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }
  constexpr Mat2 inverse() const {
    const double d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend constexpr Vec2 operator*(const Mat2& a, Vec2 v) {
    return {a.a11 * v.q + a.a12 * v.x, a.a21 * v.q + a.a22 * v.x};
  }
  friend constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
};

constexpr Mat2 operator*(const SymMat2& a, const SymMat2& b) { return Mat2::from(a) * Mat2::from(b); }

/// Symmetric part (A + A^T)/2 of a general matrix.
constexpr SymMat2 symmetrize(const Mat2& m) { return {m.a11, 0.5 * (m.a12 + m.a21), m.a22}; }

/// A * S * A^T for symmetric S; the result is symmetric up to rounding and is
/// re-symmetrized.
constexpr SymMat2 congruence(const Mat2& a, const SymMat2& s) {
  return symmetrize(a * Mat2::from(s) * a.transpose());
}

/// Closed-form inverse. Caller guarantees det != 0.
constexpr SymMat2 inverse(const SymMat2& s) {
  const double d = s.det();
  return {s.xx / d, -s.qx / d, s.qq / d};
}

/// Eigen-decomposition of a 2x2 symmetric matrix.
/// `major` >= `minor`; `angle` is the direction of the major eigenvector
/// measured from the q-axis, in (-pi/2, pi/2]; isotropic input gives 0.
struct SymEigen2 {
  double major = 0.0;
  double minor = 0.0;
  double angle = 0.0;
};

inline SymEigen2 eigen(const SymMat2& s) {
  const double mean = 0.5 * (s.qq + s.xx);
  const double half_diff = 0.5 * (s.qq - s.xx);
  const double radius = std::hypot(half_diff, s.qx);
  SymEigen2 out;
  out.major = mean + radius;
  // avoid cancellation for the smaller root
  out.minor = (out.major != 0.0) ? s.det() / out.major : mean - radius;
  out.angle = (radius == 0.0) ? 0.0 : 0.5 * std::atan2(2.0 * s.qx, s.qq - s.xx);
  if (out.angle <= -0.5 * std::numbers::pi) out.angle += std::numbers::pi;  // atan2(-0.0, <0) == -pi
  return out;
}

inline bool is_positive_definite(const SymMat2& s) { return s.qq > 0.0 && s.det() > 0.0; }

}  // namespace hybrid
