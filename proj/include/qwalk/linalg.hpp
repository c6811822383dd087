#pragma once

// Two-level linear algebra: spinors, 2x2 operators, Bloch vectors.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace qwalk {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Two-component coin amplitudes in the {H, V} basis.
struct Spinor {
  cplx h{};
  cplx v{};

  double norm_sq() const { return std::norm(h) + std::norm(v); }
  double norm() const { return std::sqrt(norm_sq()); }

  Spinor operator*(cplx s) const { return {h * s, v * s}; }
  Spinor operator+(const Spinor& o) const { return {h + o.h, v + o.v}; }
  Spinor operator-(const Spinor& o) const { return {h - o.h, v - o.v}; }
};

inline cplx inner(const Spinor& a, const Spinor& b) {
  return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

namespace basis {
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
inline const Spinor H{1.0, 0.0};
inline const Spinor V{0.0, 1.0};
inline const Spinor D{kInvSqrt2, kInvSqrt2};
inline const Spinor A{kInvSqrt2, -kInvSqrt2};
inline const Spinor L{kInvSqrt2, cplx{0.0, kInvSqrt2}};
inline const Spinor R{kInvSqrt2, cplx{0.0, -kInvSqrt2}};
}  // namespace basis

/// Row-major 2x2 complex matrix.
struct Mat2 {
  cplx a00{}, a01{}, a10{}, a11{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(cplx d0, cplx d1) { return {d0, 0.0, 0.0, d1}; }

  Mat2 operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  Mat2 operator*(cplx s) const { return {a00 * s, a01 * s, a10 * s, a11 * s}; }
  Mat2 operator+(const Mat2& o) const {
    return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
  }
  Spinor operator*(const Spinor& s) const {
    return {a00 * s.h + a01 * s.v, a10 * s.h + a11 * s.v};
  }

  Mat2 adjoint() const {
    return {std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)};
  }
  cplx trace() const { return a00 + a11; }
  cplx det() const { return a00 * a11 - a01 * a10; }
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Mat2& a, const Mat2& b);

/// Deviation of m^dagger m from the identity (entrywise max).
double unitarity_error(const Mat2& m);

namespace pauli {
inline const Mat2 X{0.0, 1.0, 1.0, 0.0};
inline const Mat2 Y{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0};
inline const Mat2 Z{1.0, 0.0, 0.0, -1.0};
}  // namespace pauli

/// n . sigma for a real 3-vector.
Mat2 pauli_dot(const Vec3& n);

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

/// Angle between two unit vectors, robust near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

/// Spinor whose Bloch vector is the given unit axis (inverse of bloch_vector).
Spinor spinor_from_axis(const Vec3& axis);

}  // namespace qwalk
