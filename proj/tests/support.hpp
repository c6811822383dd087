#pragma once

#include <random>
#include <vector>

#include "oracles.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/walk.hpp"

namespace support {

inline oracle::M2 to_oracle(const qwalk::Mat2& m) { return {m.a00, m.a01, m.a10, m.a11}; }
inline oracle::S2 to_oracle(const qwalk::Spinor& s) { return {s.h, s.v}; }
inline oracle::V3 to_oracle(const qwalk::Vec3& v) { return {v[0], v[1], v[2]}; }

inline double max_diff(const oracle::M2& a, const oracle::M2& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline qwalk::Spinor random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  qwalk::Spinor s{{g(rng), g(rng)}, {g(rng), g(rng)}};
  return s * (1.0 / s.norm());
}

inline qwalk::WalkerState random_state(std::mt19937_64& rng, long offset, std::size_t sites) {
  std::normal_distribution<double> g;
  std::vector<qwalk::Spinor> amps(sites);
  double n = 0.0;
  for (auto& a : amps) {
    a = {{g(rng), g(rng)}, {g(rng), g(rng)}};
    n += a.norm_sq();
  }
  for (auto& a : amps) a = a * (1.0 / std::sqrt(n));
  return {offset, amps};
}

/// Angles drawn at least `margin` away from every gap-closing line
/// (theta1 or theta2 = 0, theta1 = +-theta2, all mod pi) and from the flat
/// bands at +-pi/2.
inline qwalk::CoinAngles random_gapped_angles(std::mt19937_64& rng, double margin = 0.15) {
  std::uniform_real_distribution<double> u(-qwalk::kPi, qwalk::kPi);
  auto dist_mod = [](double a, double period) {
    const double r = std::remainder(a, period);
    return std::abs(r);
  };
  for (;;) {
    const double t1 = u(rng), t2 = u(rng);
    if (dist_mod(t1, qwalk::kPi) < margin || dist_mod(t2, qwalk::kPi) < margin) continue;
    if (dist_mod(t1 - t2, qwalk::kPi) < margin || dist_mod(t1 + t2, qwalk::kPi) < margin) continue;
    if (dist_mod(t1 - qwalk::kPi / 2, qwalk::kPi) < margin ||
        dist_mod(t2 - qwalk::kPi / 2, qwalk::kPi) < margin) {
      continue;
    }
    return {t1, t2};
  }
}

}  // namespace support
