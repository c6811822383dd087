#pragma once

// Dynamic disorder: theta1 is redrawn at every step, each realization is
// recovered from its own {0, 1, T} snapshots, and the ensemble is summarized
// by how far the recovered axes leave the clean chiral plane and how often
// an integer winding can still be read.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/recover.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

struct DisorderConfig {
  CoinAngles mean_angles;
  /// Half-width of the uniform theta1 window, radians.
  double delta_theta1 = 0.0;
  Frame frame = Frame::Prime;
  int steps = 20;
  int samples = 100;
  std::uint64_t seed = 1;
  /// k-grid size; 0 selects 2 steps + 1.
  std::size_t kpoints = 0;
};

/// theta1 for each step of one realization, i.i.d. uniform on
/// [mean - delta, mean + delta]; depends only on (seed, sample).
std::vector<double> sample_angle_sequence(const DisorderConfig& config, std::size_t sample);

/// Evolves a delta state with per-step theta1 values and returns the
/// momentum snapshots at snapshot_steps(theta1s.size()).
Snapshots disordered_snapshots(Frame frame, const std::vector<double>& theta1s, double theta2,
                               const Spinor& initial, std::size_t kpoints);

struct SampleOutcome {
  std::optional<AxisField> field;
  std::optional<int> winding;
  /// Error kind when no winding could be read (empty when readable).
  std::string failure;
  /// Mean over k of the angle between n(k) and the clean chiral plane.
  double divergence = 0.0;
};

struct EnsembleSummary {
  std::vector<SampleOutcome> samples;
  double readable_fraction = 0.0;
  /// Most frequent readable winding (ties to the smaller value).
  std::optional<int> modal_winding;
  /// Fraction of samples whose winding equals modal_winding.
  double modal_fraction = 0.0;
  /// Sample mean of SampleOutcome::divergence.
  double mean_divergence = 0.0;
  /// Per-k divergence averaged over recovered samples.
  std::vector<double> divergence_by_k;
};

EnsembleSummary disorder_ensemble(const DisorderConfig& config);

}  // namespace qwalk
