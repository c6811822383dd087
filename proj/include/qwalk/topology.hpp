#pragma once

// Winding numbers of eigen-axis fields about a chiral axis, Floquet invariant
// pairs from the two shifted time-frames, and phase-diagram scans.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qwalk/linalg.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Projected axes shorter than this are rejected as degenerate.
inline constexpr double kProjectionFloor = 0.05;
/// Largest admissible angular step between consecutive samples.
inline constexpr double kMaxIncrement = kPi / 2.0;
/// Admissible distance of the accumulated winding from an integer.
inline constexpr double kIntegerTolerance = 0.05;
/// Sample count used for analytic invariants.
inline constexpr std::size_t kAnalyticSamples = 401;

/// Signed number of turns of the axes about chiral_axis, accumulated
/// right-handedly over the closed sample loop.
///
/// Throws ProjectionDegenerate if a sample projects to less than
/// kProjectionFloor, and NonInteger if a step exceeds kMaxIncrement or the
/// total misses an integer by more than kIntegerTolerance. Fewer than 8
/// samples is a usage error (std::invalid_argument).
int winding_number(std::span<const Vec3> axes, const Vec3& chiral_axis);

struct InvariantReport {
  int nu_prime = 0;
  int nu_double_prime = 0;
  /// 2 nu_0 = nu' + nu'' and 2 nu_pi = nu' - nu''.
  int two_nu0 = 0;
  int two_nu_pi = 0;
  /// nu' and nu'' differ in parity, so nu_0 and nu_pi are half-integers.
  bool parity_mismatch = false;

  static InvariantReport combine(int nu_prime, int nu_double_prime);
};

/// Both shifted-frame windings from analytic axes about x; propagates
/// GapClosure.
InvariantReport analytic_invariants(const CoinAngles& angles,
                                    std::size_t samples = kAnalyticSamples);

struct PhaseCell {
  double theta1 = 0.0;
  double theta2 = 0.0;
  InvariantReport report;
  /// Within 0.5 deg of a phase boundary (theta1 or theta2 = 0, or
  /// theta1 = +-theta2, all mod pi).
  bool boundary = false;
  /// A shifted-frame gap closed on the sampling grid; report is unset.
  bool gap_closed = false;

  std::string flags() const;
};

/// True when (theta1, theta2) lies within margin of a phase boundary.
bool near_phase_boundary(double theta1, double theta2, double margin = deg_to_rad(0.5));

/// Row-major over theta1 (outer) and theta2 (inner).
std::vector<PhaseCell> phase_scan(std::span<const double> theta1_grid,
                                  std::span<const double> theta2_grid,
                                  std::size_t samples = kAnalyticSamples);

/// n angles uniformly covering (-pi, pi], shifted by fraction * step off the
/// lattice of multiples of the step.
std::vector<double> offset_angle_grid(std::size_t n, double fraction);

}  // namespace qwalk
