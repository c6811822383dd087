#include "qwalk/random.hpp"

#include <algorithm>

namespace qwalk {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<long> multinomial(std::span<const double> probabilities, long trials, Rng& rng) {
  std::vector<long> counts(probabilities.size(), 0);
  double remaining_mass = 1.0;
  long remaining = trials;
  // Sequential conditional binomials.
  for (std::size_t i = 0; i < probabilities.size() && remaining > 0; ++i) {
    const double p = std::max(0.0, probabilities[i]);
    if (p <= 0.0) continue;
    const double q = remaining_mass > 0.0 ? std::min(1.0, p / remaining_mass) : 1.0;
    std::binomial_distribution<long> draw(remaining, q);
    counts[i] = draw(rng);
    remaining -= counts[i];
    remaining_mass -= p;
  }
  return counts;
}

}  // namespace qwalk
