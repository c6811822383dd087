#include "qwalk/recover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

Vec3 plane_normal(const Vec3& s0, const Vec3& s1, const Vec3& s2) {
  const Vec3 c = cross(s1 - s0, s2 - s0);
  const double n = norm(c);
  if (n < kCollinearFloor) {
    throw Collinear("spinor samples do not span a plane (|cross| = " + std::to_string(n) + ")");
  }
  return (1.0 / n) * c;
}

std::string_view to_string(AxisFlag flag) {
  return flag == AxisFlag::Ok ? "ok" : "interpolated";
}

std::vector<Vec3> AxisField::axes() const {
  std::vector<Vec3> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.axis);
  return out;
}

std::size_t AxisField::interpolated_count() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const auto& s) {
    return s.flag == AxisFlag::Interpolated;
  }));
}

std::vector<int> fallback_steps(int steps) {
  std::vector<int> out;
  for (int t : {steps, steps - 1, steps - 2, 3, 2}) {
    if (t >= 2 && t <= steps && std::find(out.begin(), out.end(), t) == out.end()) {
      out.push_back(t);
    }
  }
  return out;
}

std::vector<int> snapshot_steps(int steps) {
  std::vector<int> out{0, 1};
  for (int t : fallback_steps(steps)) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void orient_by_continuation(std::vector<Vec3>& axes) {
  if (axes.empty()) return;
  axes[0] = orient_by(axes[0], {2, 0, 1});
  for (std::size_t j = 1; j < axes.size(); ++j) {
    if (dot(axes[j], axes[j - 1]) < 0.0) axes[j] = -axes[j];
  }
}

namespace {

Vec3 slerp(const Vec3& a, Vec3 b, double t) {
  if (dot(a, b) < 0.0) b = -b;
  const double omega = angle_between(a, b);
  if (omega < 1e-12) return a;
  const double s = std::sin(omega);
  const Vec3 v = (std::sin((1.0 - t) * omega) / s) * a + (std::sin(t * omega) / s) * b;
  return (1.0 / norm(v)) * v;
}

const MomentumState& snapshot_at(const Snapshots& snapshots, int step) {
  const auto it = snapshots.find(step);
  if (it == snapshots.end()) {
    throw std::invalid_argument("recover: missing snapshot for step " + std::to_string(step));
  }
  return it->second;
}

}  // namespace

AxisField recover_axes_from_snapshots(const Snapshots& snapshots, int steps,
                                      const RecoverOptions& options) {
  if (steps < 2) throw std::invalid_argument("recover: need at least 2 steps");
  const MomentumState& first = snapshot_at(snapshots, 0);
  const MomentumState& second = snapshot_at(snapshots, 1);
  const std::size_t m = first.size();
  const std::vector<int> candidates =
      options.fallback ? fallback_steps(steps) : std::vector<int>{steps};

  AxisField field;
  field.samples.resize(m);
  std::vector<bool> valid(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    AxisSample& sample = field.samples[j];
    sample.k = first.k[j];
    const Vec3 s0 = bloch_vector(first.spinors[j]);
    const Vec3 s1 = bloch_vector(second.spinors[j]);
    if (!options.fallback) {
      const Vec3 s2 = bloch_vector(snapshot_at(snapshots, steps).spinors[j]);
      sample.axis = plane_normal(s0, s1, s2);
      sample.step = steps;
      sample.conditioning = norm(cross(s1 - s0, s2 - s0));
      valid[j] = true;
      continue;
    }
    // First step clearing the conditioning bar wins; otherwise the best
    // triple above the collinearity floor; otherwise interpolate later.
    int chosen = 0;
    double chosen_c = 0.0;
    Vec3 chosen_s2{};
    for (int t : candidates) {
      const Vec3 s2 = bloch_vector(snapshot_at(snapshots, t).spinors[j]);
      const double c = norm(cross(s1 - s0, s2 - s0));
      if (c > chosen_c) {
        chosen = t;
        chosen_c = c;
        chosen_s2 = s2;
      }
      if (c >= options.min_conditioning) break;
    }
    if (chosen_c < kCollinearFloor) continue;
    sample.axis = plane_normal(s0, s1, chosen_s2);
    sample.step = chosen;
    sample.conditioning = chosen_c;
    valid[j] = true;
  }

  if (std::none_of(valid.begin(), valid.end(), [](bool v) { return v; })) {
    throw FlatBand("no quasi-momentum admits three distinct spinor states");
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (valid[j]) continue;
    std::size_t left = 1, right = 1;
    while (!valid[(j + m - left) % m]) ++left;
    while (!valid[(j + right) % m]) ++right;
    AxisSample& sample = field.samples[j];
    sample.axis = slerp(field.samples[(j + m - left) % m].axis,
                        field.samples[(j + right) % m].axis,
                        static_cast<double>(left) / static_cast<double>(left + right));
    sample.flag = AxisFlag::Interpolated;
    sample.step = 0;
    sample.conditioning = 0.0;
  }

  auto axes = field.axes();
  orient_by_continuation(axes);
  for (std::size_t j = 0; j < m; ++j) field.samples[j].axis = axes[j];
  return field;
}

Spinor default_initial_spinor(Frame frame, const CoinAngles& angles) {
  return spinor_from_axis(chiral_axis(frame, angles));
}

AxisField recover_axes(Frame frame, const CoinAngles& angles, int steps, std::size_t m,
                       const std::optional<Spinor>& initial, const RecoverOptions& options) {
  if (steps < 2) throw std::invalid_argument("recover_axes: need at least 2 steps");
  if (m == 0) m = static_cast<std::size_t>(2 * steps + 1);

  const auto grid = k_grid(m);
  double e_min = kPi, e_max = 0.0;
  for (double k : grid) {
    const double e = quasienergy(frame, angles, k);
    e_min = std::min(e_min, e);
    e_max = std::max(e_max, e);
  }
  if (e_max - e_min < 1e-9) {
    throw FlatBand("quasienergy is independent of k; trajectories carry no axis information");
  }

  const Spinor psi0 = initial ? *initial : default_initial_spinor(frame, angles);
  const auto wanted = snapshot_steps(steps);
  const Protocol protocol = Protocol::split_step(frame);
  Snapshots snapshots;
  WalkerState state = WalkerState::delta(0, psi0);
  for (int t = 0; t <= steps; ++t) {
    if (t > 0) state = evolve_step(state, protocol, angles);
    if (std::find(wanted.begin(), wanted.end(), t) != wanted.end()) {
      snapshots.emplace(t, to_momentum(state, m));
    }
  }
  return recover_axes_from_snapshots(snapshots, steps, options);
}

int recovered_winding(Frame frame, const CoinAngles& angles, int steps, std::size_t m,
                      const std::optional<Spinor>& initial) {
  const auto field = recover_axes(frame, angles, steps, m, initial);
  return winding_number(field.axes(), chiral_axis(frame, angles));
}

}  // namespace qwalk
