#include "qwalk/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

std::vector<double> k_grid(std::size_t m) {
  std::vector<double> ks(m);
  for (std::size_t j = 0; j < m; ++j) {
    ks[j] = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
  }
  return ks;
}

Spinor MomentumState::raw(std::size_t j) const {
  const double amp = std::sqrt(weights[j] * static_cast<double>(size()));
  return spinors[j] * amp;
}

MomentumState to_momentum(const WalkerState& state, std::size_t m) {
  if (m < state.size()) {
    throw std::invalid_argument("to_momentum: grid of " + std::to_string(m) +
                                " points is smaller than the lattice window of " +
                                std::to_string(state.size()) + " sites");
  }
  MomentumState ms;
  ms.k = k_grid(m);
  ms.spinors.resize(m);
  ms.weights.resize(m);
  ms.offset = state.offset();
  ms.length = state.size();
  const auto amps = state.amps();
  for (std::size_t j = 0; j < m; ++j) {
    Spinor phi{};
    long x = state.offset();
    for (const auto& a : amps) {
      phi = phi + a * std::polar(1.0, -ms.k[j] * static_cast<double>(x));
      ++x;
    }
    const double n2 = phi.norm_sq();
    ms.weights[j] = n2 / static_cast<double>(m);
    ms.spinors[j] = n2 > 0.0 ? phi * (1.0 / std::sqrt(n2)) : Spinor{};
  }
  return ms;
}

WalkerState from_momentum(const MomentumState& ms) {
  const std::size_t m = ms.size();
  std::vector<Spinor> amps(ms.length);
  for (std::size_t i = 0; i < ms.length; ++i) {
    const double x = static_cast<double>(ms.offset + static_cast<long>(i));
    Spinor acc{};
    for (std::size_t j = 0; j < m; ++j) acc = acc + ms.raw(j) * std::polar(1.0, ms.k[j] * x);
    amps[i] = acc * (1.0 / static_cast<double>(m));
  }
  return {ms.offset, std::move(amps), WalkerState::Unchecked{}};
}

namespace {

Mat2 t_plus(double k) { return Mat2::diag(std::polar(1.0, -k), 1.0); }
Mat2 t_minus(double k) { return Mat2::diag(1.0, std::polar(1.0, k)); }

}  // namespace

Mat2 walk_unitary_k(Frame frame, const CoinAngles& angles, double k) {
  const double t1 = angles.theta1;
  const double t2 = angles.theta2;
  switch (frame) {
    case Frame::Standard:
      return t_minus(k) * coin_matrix(t2) * t_plus(k) * coin_matrix(t1);
    case Frame::Prime:
      return coin_matrix(t1 / 2.0) * t_minus(k) * coin_matrix(t2) * t_plus(k) *
             coin_matrix(t1 / 2.0);
    case Frame::DoublePrime:
      return coin_matrix(t2 / 2.0) * t_plus(k) * coin_matrix(t1) * t_minus(k) *
             coin_matrix(t2 / 2.0);
  }
  return Mat2::identity();
}

Mat2 walk_unitary_k(const Protocol& protocol, const CoinAngles& angles, double k) {
  if (protocol.kind == Protocol::Kind::Simple) {
    return t_minus(k) * t_plus(k) * protocol.coin;
  }
  return walk_unitary_k(protocol.frame, angles, k);
}

BandPoint decompose_unitary(const Mat2& u, double k) {
  // tr(U sigma_i) = -2i sin(E) n_i, so the imaginary parts give sin(E) n
  // directly; atan2 keeps E accurate near 0 and pi where acos is not.
  Vec3 scaled{};
  const Mat2* sigmas[3] = {&pauli::X, &pauli::Y, &pauli::Z};
  for (int i = 0; i < 3; ++i) scaled[i] = std::real(kI * (u * *sigmas[i]).trace()) / 2.0;
  const double s = norm(scaled);
  const double energy = std::atan2(s, std::real(u.trace()) / 2.0);
  if (s < kGapTolerance) {
    throw GapClosure("gap closes at k = " + std::to_string(k) + " (E = " +
                     std::to_string(energy) + ")");
  }
  return {k, energy, (1.0 / s) * scaled};
}

BandPoint band_point(Frame frame, const CoinAngles& angles, double k) {
  return decompose_unitary(walk_unitary_k(frame, angles, k), k);
}

double quasienergy(Frame frame, const CoinAngles& angles, double k) {
  const Mat2 u = walk_unitary_k(frame, angles, k);
  Vec3 scaled{};
  const Mat2* sigmas[3] = {&pauli::X, &pauli::Y, &pauli::Z};
  for (int i = 0; i < 3; ++i) scaled[i] = std::real(kI * (u * *sigmas[i]).trace()) / 2.0;
  return std::atan2(norm(scaled), std::real(u.trace()) / 2.0);
}

std::vector<Vec3> analytic_axes(Frame frame, const CoinAngles& angles, std::size_t m) {
  std::vector<Vec3> axes;
  axes.reserve(m);
  for (double k : k_grid(m)) axes.push_back(band_point(frame, angles, k).axis);
  return axes;
}

Vec3 orient_by(const Vec3& v, std::array<int, 3> order) {
  for (int i : order) {
    if (std::abs(v[i]) > 1e-12) return v[i] < 0.0 ? -v : v;
  }
  return v;
}

Vec3 chiral_axis(Frame frame, const CoinAngles& angles) {
  constexpr double kProbeA = 0.7;
  constexpr double kProbeB = 2.1;
  Vec3 a, b;
  try {
    a = band_point(frame, angles, kProbeA).axis;
    b = band_point(frame, angles, kProbeB).axis;
  } catch (const GapClosure& e) {
    throw DegenerateAxis(std::string("chiral axis probe: ") + e.what());
  }
  const Vec3 c = cross(a, b);
  const double n = norm(c);
  if (n < 1e-10) throw DegenerateAxis("chiral axis probes give parallel eigen-axes");
  return orient_by((1.0 / n) * c, {0, 1, 2});
}

Vec3 bloch_vector(const Spinor& s) {
  const double n2 = s.norm_sq();
  if (n2 == 0.0) throw std::invalid_argument("bloch_vector: zero spinor");
  const cplx cross_term = std::conj(s.h) * s.v;
  return {2.0 * cross_term.real() / n2, 2.0 * cross_term.imag() / n2,
          (std::norm(s.h) - std::norm(s.v)) / n2};
}

}  // namespace qwalk
