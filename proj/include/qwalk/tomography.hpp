#pragma once

// Full wave-function tomography of a walker: synthetic local projective
// counts in the {H, V, R, D} bases, the spin-echo interference collection,
// and pure-state reconstruction by simulated annealing of a chi-square-like
// likelihood.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

enum Outcome : std::size_t { kOutH = 0, kOutV = 1, kOutR = 2, kOutD = 3 };
inline constexpr std::size_t kOutcomes = 4;

/// Model counts below this floor are clamped in the likelihood.
inline constexpr double kCountFloor = 0.5;

/// One site of the pure-state ansatz
///   p exp(-i phi) [cos(theta/2) |H> + exp(i delta) sin(theta/2) |V>].
struct SiteParams {
  double p = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double delta = 0.0;
};

struct SiteParametrization {
  long offset = 0;
  std::vector<SiteParams> sites;

  /// Gauge-fixed (phi of the first site = 0), angles wrapped into range.
  static SiteParametrization from_state(const WalkerState& state);
  WalkerState to_state() const;

  /// 4 (2N + 1) - 2 for 2N + 1 sites.
  static std::size_t free_parameters(std::size_t sites) { return 4 * sites - 2; }
};

/// Counts for a contiguous block of sites, one {nH, nV, nR, nD} row per site.
/// Sampled counts are integral; exact expected counts may be fractional.
struct CountBlock {
  long offset = 0;
  std::vector<std::array<double, kOutcomes>> counts;

  std::size_t size() const { return counts.size(); }
};

struct CountSet {
  long shots = 0;
  std::uint64_t seed = 0;
  CountBlock direct;
  /// Spin-echo collection over [direct.offset, direct last site - 1].
  CountBlock shifted;

  std::size_t cells() const { return kOutcomes * (direct.size() + shifted.size()); }
};

/// H amplitude at x becomes the old H amplitude at x + 1; V is unchanged.
WalkerState spin_echo_shift(const WalkerState& state);

/// Noise-free counts: shots times each outcome probability.
CountSet expected_counts(const WalkerState& state, long shots);

/// Three analyzer settings per collection (Z keeps H and V, X keeps D, Y
/// keeps R), each a multinomial of `shots` over (site, outcome).
CountSet simulate_counts(const WalkerState& state, long shots, std::uint64_t seed);

/// sum over both collections of (model - n)^2 / (2 model), with model counts
/// from the parametrization floored at kCountFloor.
double likelihood(const SiteParametrization& params, const CountSet& counts);

/// Direct-collection-only likelihood (no interference term).
double likelihood_direct_only(const SiteParametrization& params, const CountSet& counts);

struct AnnealConfig {
  /// Initial temperature; 0 selects L(initializer) / 10.
  double t0 = 0.0;
  /// Geometric cooling factor applied once per sweep.
  double alpha = 0.995;
  /// Proposals per restart.
  long iterations = 200000;
  int restarts = 5;
  std::uint64_t seed = 1;
};

/// Parametrization estimated directly from the counts: magnitudes and spinor
/// angles from the direct collection, site phases chained through the
/// shifted collection.
SiteParametrization initial_guess(const CountSet& counts);

struct Reconstruction {
  WalkerState state;
  SiteParametrization params;
  double likelihood = 0.0;
  double initial_likelihood = 0.0;
};

/// Throws NonConvergence when the best likelihood exceeds 5 x counts.cells().
Reconstruction reconstruct(const CountSet& counts, const AnnealConfig& config = {});

}  // namespace qwalk
