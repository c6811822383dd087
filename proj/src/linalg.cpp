#include "qwalk/linalg.hpp"

#include <algorithm>

namespace qwalk {

double max_abs_diff(const Mat2& a, const Mat2& b) {
  return std::max({std::abs(a.a00 - b.a00), std::abs(a.a01 - b.a01),
                   std::abs(a.a10 - b.a10), std::abs(a.a11 - b.a11)});
}

double unitarity_error(const Mat2& m) {
  return max_abs_diff(m.adjoint() * m, Mat2::identity());
}

Mat2 pauli_dot(const Vec3& n) {
  return pauli::X * n[0] + pauli::Y * n[1] + pauli::Z * n[2];
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

Spinor spinor_from_axis(const Vec3& axis) {
  const double n = norm(axis);
  const double polar = std::acos(std::clamp(axis[2] / n, -1.0, 1.0));
  const double azimuth = std::atan2(axis[1], axis[0]);
  return {std::cos(polar / 2.0), std::polar(std::sin(polar / 2.0), azimuth)};
}

}  // namespace qwalk
