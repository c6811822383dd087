#include "qwalk/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qwalk/errors.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/random.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

std::vector<double> sample_angle_sequence(const DisorderConfig& config, std::size_t sample) {
  if (config.steps < 0) throw std::invalid_argument("sample_angle_sequence: negative steps");
  if (config.delta_theta1 < 0.0) throw std::invalid_argument("sample_angle_sequence: negative width");
  const double mean = config.mean_angles.theta1;
  std::vector<double> seq(static_cast<std::size_t>(config.steps), mean);
  if (config.delta_theta1 == 0.0) return seq;
  Rng rng(derive_seed(config.seed, sample));
  std::uniform_real_distribution<double> draw(mean - config.delta_theta1, mean + config.delta_theta1);
  for (auto& t : seq) t = draw(rng);
  return seq;
}

Snapshots disordered_snapshots(Frame frame, const std::vector<double>& theta1s, double theta2,
                               const Spinor& initial, std::size_t kpoints) {
  const int steps = static_cast<int>(theta1s.size());
  const auto wanted = snapshot_steps(steps);
  const Protocol protocol = Protocol::split_step(frame);
  Snapshots snapshots;
  WalkerState state = WalkerState::delta(0, initial);
  for (int t = 0; t <= steps; ++t) {
    if (t > 0) state = evolve_step(state, protocol, {theta1s[static_cast<std::size_t>(t - 1)], theta2});
    if (std::find(wanted.begin(), wanted.end(), t) != wanted.end()) {
      snapshots.emplace(t, to_momentum(state, kpoints));
    }
  }
  return snapshots;
}

EnsembleSummary disorder_ensemble(const DisorderConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("disorder_ensemble: samples must be positive");
  if (config.steps < 2) throw std::invalid_argument("disorder_ensemble: need at least 2 steps");
  const std::size_t m =
      config.kpoints ? config.kpoints : static_cast<std::size_t>(2 * config.steps + 1);
  const Vec3 clean_axis = chiral_axis(config.frame, config.mean_angles);
  const Spinor initial = spinor_from_axis(clean_axis);

  EnsembleSummary summary;
  summary.samples.resize(static_cast<std::size_t>(config.samples));
  parallel_for(summary.samples.size(), [&](std::size_t i) {
    SampleOutcome& out = summary.samples[i];
    try {
      const auto theta1s = sample_angle_sequence(config, i);
      const auto snaps = disordered_snapshots(config.frame, theta1s, config.mean_angles.theta2,
                                              initial, m);
      out.field = recover_axes_from_snapshots(snaps, config.steps);
    } catch (const DomainError& e) {
      out.failure = e.kind();
      return;
    }
    double acc = 0.0;
    for (const auto& s : out.field->samples) {
      acc += std::asin(std::min(1.0, std::abs(dot(s.axis, clean_axis))));
    }
    out.divergence = acc / static_cast<double>(out.field->samples.size());
    try {
      out.winding = winding_number(out.field->axes(), clean_axis);
    } catch (const DomainError& e) {
      out.failure = e.kind();
    }
  });

  std::map<int, int> histogram;
  std::size_t readable = 0, recovered = 0;
  double divergence_sum = 0.0;
  summary.divergence_by_k.assign(m, 0.0);
  for (const auto& s : summary.samples) {
    if (s.winding) {
      ++readable;
      ++histogram[*s.winding];
    }
    if (s.field) {
      ++recovered;
      divergence_sum += s.divergence;
      for (std::size_t j = 0; j < m; ++j) {
        summary.divergence_by_k[j] +=
            std::asin(std::min(1.0, std::abs(dot(s.field->samples[j].axis, clean_axis))));
      }
    }
  }
  const double n = static_cast<double>(summary.samples.size());
  summary.readable_fraction = static_cast<double>(readable) / n;
  if (recovered > 0) {
    summary.mean_divergence = divergence_sum / static_cast<double>(recovered);
    for (auto& d : summary.divergence_by_k) d /= static_cast<double>(recovered);
  }
  int best_count = 0;
  for (const auto& [w, count] : histogram) {
    if (count > best_count) {
      best_count = count;
      summary.modal_winding = w;
    }
  }
  summary.modal_fraction = static_cast<double>(best_count) / n;
  return summary;
}

}  // namespace qwalk
