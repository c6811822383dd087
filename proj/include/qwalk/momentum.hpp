#pragma once

// Quasi-momentum picture: lattice DFT, walk operators at fixed k, band
// energies and eigen-axes, chiral axes, Bloch vectors.

#include <cstddef>
#include <vector>

#include "qwalk/linalg.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Below this |sin E| the eigen-axis n(k) is treated as undefined.
inline constexpr double kGapTolerance = 1e-8;

/// k_j = -pi + 2 pi j / M, j = 0..M-1.
std::vector<double> k_grid(std::size_t m);

/// Per-k spinors of a lattice state under phi(k) = sum_x exp(-i k x) psi(x).
struct MomentumState {
  std::vector<double> k;
  /// Unit-normalized spinor per k (zero where the weight vanishes).
  std::vector<Spinor> spinors;
  /// |phi(k)|^2 / M; sums to 1 for a normalized state.
  std::vector<double> weights;
  /// Lattice window of the transformed state, needed for the inverse.
  long offset = 0;
  std::size_t length = 0;

  std::size_t size() const { return k.size(); }
  /// Unnormalized transform phi(k_j).
  Spinor raw(std::size_t j) const;
};

/// Throws std::invalid_argument when m is smaller than the state's window.
MomentumState to_momentum(const WalkerState& state, std::size_t m);

/// Inverse transform onto the stored lattice window.
WalkerState from_momentum(const MomentumState& ms);

/// The protocol's one-step operator at quasi-momentum k, with
/// T+(k) = diag(exp(-ik), 1) and T-(k) = diag(1, exp(ik)).
Mat2 walk_unitary_k(const Protocol& protocol, const CoinAngles& angles, double k);
Mat2 walk_unitary_k(Frame frame, const CoinAngles& angles, double k);

/// One point of the band structure: U(k) = cos E - i sin E (n . sigma).
struct BandPoint {
  double k = 0.0;
  double energy = 0.0;  // in [0, pi]
  Vec3 axis{};
};

/// Decomposes a unit-determinant 2x2 unitary; throws GapClosure when
/// |sin E| < kGapTolerance.
BandPoint decompose_unitary(const Mat2& u, double k = 0.0);

BandPoint band_point(Frame frame, const CoinAngles& angles, double k);

/// Quasienergy only; defined everywhere including gap closings.
double quasienergy(Frame frame, const CoinAngles& angles, double k);

/// Axes on the grid k_grid(m); throws GapClosure at the first closed point.
std::vector<Vec3> analytic_axes(Frame frame, const CoinAngles& angles, std::size_t m);

/// Normal to the plane holding every n(k), as n(0.7) x n(2.1), oriented with
/// a non-negative x component (ties broken on y, then z).
/// Throws DegenerateAxis when the probes are gap-closed or nearly parallel.
Vec3 chiral_axis(Frame frame, const CoinAngles& angles);

/// (<sigma_x>, <sigma_y>, <sigma_z>) of the normalized spinor.
/// Throws std::invalid_argument for the zero spinor.
Vec3 bloch_vector(const Spinor& s);

/// Flips v so its first non-negligible component (in the given order) is positive.
Vec3 orient_by(const Vec3& v, std::array<int, 3> order);

}  // namespace qwalk
