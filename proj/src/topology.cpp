#include "qwalk/topology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

double wrap_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a;
}

// Distance of a from the nearest multiple of pi.
double distance_to_pi_multiple(double a) { return std::abs(std::remainder(a, kPi)); }

}  // namespace

int winding_number(std::span<const Vec3> axes, const Vec3& chiral_axis) {
  if (axes.size() < 8) throw std::invalid_argument("winding_number: need at least 8 samples");
  const Vec3 c = (1.0 / norm(chiral_axis)) * chiral_axis;

  // Right-handed frame (e1, e2, c).
  const int least = std::abs(c[0]) <= std::abs(c[1])
                        ? (std::abs(c[0]) <= std::abs(c[2]) ? 0 : 2)
                        : (std::abs(c[1]) <= std::abs(c[2]) ? 1 : 2);
  Vec3 seed{};
  seed[least] = 1.0;
  Vec3 e1 = seed - dot(seed, c) * c;
  e1 = (1.0 / norm(e1)) * e1;
  const Vec3 e2 = cross(c, e1);

  std::vector<double> phase(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const double u = dot(axes[i], e1);
    const double v = dot(axes[i], e2);
    if (std::hypot(u, v) < kProjectionFloor) {
      throw ProjectionDegenerate("sample " + std::to_string(i) +
                                 " is nearly parallel to the chiral axis");
    }
    phase[i] = std::atan2(v, u);
  }

  double total = 0.0;
  for (std::size_t i = 0; i < phase.size(); ++i) {
    const double step = wrap_pi(phase[(i + 1) % phase.size()] - phase[i]);
    if (std::abs(step) >= kMaxIncrement) {
      throw NonInteger("angular step of " + std::to_string(step) + " rad after sample " +
                       std::to_string(i) + " leaves the winding unresolved");
    }
    total += step;
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= kIntegerTolerance) {
    throw NonInteger("accumulated winding " + std::to_string(turns) + " is not an integer");
  }
  return static_cast<int>(rounded);
}

InvariantReport InvariantReport::combine(int nu_prime, int nu_double_prime) {
  InvariantReport r;
  r.nu_prime = nu_prime;
  r.nu_double_prime = nu_double_prime;
  r.two_nu0 = nu_prime + nu_double_prime;
  r.two_nu_pi = nu_prime - nu_double_prime;
  r.parity_mismatch = (r.two_nu0 % 2) != 0;
  return r;
}

InvariantReport analytic_invariants(const CoinAngles& angles, std::size_t samples) {
  const Vec3 x_axis{1.0, 0.0, 0.0};
  const auto prime = analytic_axes(Frame::Prime, angles, samples);
  const auto dprime = analytic_axes(Frame::DoublePrime, angles, samples);
  return InvariantReport::combine(winding_number(prime, x_axis), winding_number(dprime, x_axis));
}

std::string PhaseCell::flags() const {
  if (boundary && gap_closed) return "boundary|gap";
  if (boundary) return "boundary";
  if (gap_closed) return "gap";
  return "ok";
}

bool near_phase_boundary(double theta1, double theta2, double margin) {
  return distance_to_pi_multiple(theta1) < margin || distance_to_pi_multiple(theta2) < margin ||
         distance_to_pi_multiple(theta1 - theta2) < margin ||
         distance_to_pi_multiple(theta1 + theta2) < margin;
}

std::vector<PhaseCell> phase_scan(std::span<const double> theta1_grid,
                                  std::span<const double> theta2_grid, std::size_t samples) {
  const std::size_t n2 = theta2_grid.size();
  std::vector<PhaseCell> cells(theta1_grid.size() * n2);
  parallel_for(cells.size(), [&](std::size_t idx) {
    PhaseCell& cell = cells[idx];
    cell.theta1 = theta1_grid[idx / n2];
    cell.theta2 = theta2_grid[idx % n2];
    cell.boundary = near_phase_boundary(cell.theta1, cell.theta2);
    try {
      cell.report = analytic_invariants({cell.theta1, cell.theta2}, samples);
    } catch (const GapClosure&) {
      cell.gap_closed = true;
    } catch (const DomainError&) {
      // Windings unresolvable at a near-closing gap; treated like a closing.
      cell.gap_closed = true;
    }
  });
  return cells;
}

std::vector<double> offset_angle_grid(std::size_t n, double fraction) {
  std::vector<double> grid(n);
  const double step = 2.0 * kPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = -kPi + (static_cast<double>(i) + fraction) * step;
  }
  return grid;
}

}  // namespace qwalk
