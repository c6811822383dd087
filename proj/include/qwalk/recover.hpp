#pragma once

// Eigen-axis recovery from walk dynamics. At fixed k every step rotates the
// spinor about n(k), so Bloch vectors from three different steps span a plane
// whose normal is +-n(k). Signs are then fixed by continuity in k.

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "qwalk/linalg.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

inline constexpr double kCollinearFloor = 1e-6;

/// Unit normal of (s1 - s0) x (s2 - s0); sign is arbitrary.
/// Throws Collinear when the cross product is shorter than kCollinearFloor.
Vec3 plane_normal(const Vec3& s0, const Vec3& s1, const Vec3& s2);

struct RecoverOptions {
  /// Try the fallback steps and interpolate when no triple is usable. When
  /// false only the {0, 1, T} triple is used and Collinear propagates.
  bool fallback = true;
  /// Triples with a shorter cross product move on to the next fallback step.
  double min_conditioning = 0.3;
};

enum class AxisFlag { Ok, Interpolated };

std::string_view to_string(AxisFlag flag);

struct AxisSample {
  double k = 0.0;
  Vec3 axis{};
  AxisFlag flag = AxisFlag::Ok;
  /// Third step of the triple actually used (0 when interpolated).
  int step = 0;
  /// |(s1 - s0) x (s2 - s0)| of that triple.
  double conditioning = 0.0;
};

struct AxisField {
  std::vector<AxisSample> samples;

  std::vector<Vec3> axes() const;
  std::size_t interpolated_count() const;
};

/// Third steps tried in order: T, T-1, T-2, 3, 2 (deduplicated, each in [2, T]).
std::vector<int> fallback_steps(int steps);

/// Every step whose snapshot recovery may read: 0, 1 and fallback_steps(T).
std::vector<int> snapshot_steps(int steps);

/// Momentum-space snapshots of a single trajectory, keyed by step.
using Snapshots = std::map<int, MomentumState>;

/// Fixes the sign of axes[0] (non-negative z, ties on x then y) and then
/// flips each later axis to agree with its predecessor.
void orient_by_continuation(std::vector<Vec3>& axes);

/// Recovers and orients the axis field from snapshots at steps 0, 1 and the
/// fallback steps. Throws FlatBand if no k admits a usable triple.
AxisField recover_axes_from_snapshots(const Snapshots& snapshots, int steps,
                                      const RecoverOptions& options = {});

/// The chiral axis as a spinor; trajectories are great circles from it.
Spinor default_initial_spinor(Frame frame, const CoinAngles& angles);

/// Simulates a walk from the origin with the given initial spinor and
/// recovers n(k) on an m-point grid (m = 0 selects 2T + 1).
/// Throws FlatBand when the quasienergy is k-independent.
AxisField recover_axes(Frame frame, const CoinAngles& angles, int steps, std::size_t m,
                       const std::optional<Spinor>& initial = std::nullopt,
                       const RecoverOptions& options = {});

/// winding_number of the recovered field about the frame's chiral axis.
int recovered_winding(Frame frame, const CoinAngles& angles, int steps, std::size_t m = 0,
                      const std::optional<Spinor>& initial = std::nullopt);

}  // namespace qwalk
