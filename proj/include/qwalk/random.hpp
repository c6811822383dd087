#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qwalk {

using Rng = std::mt19937_64;

/// Seed for an independent stream, derived from (master, index) by a
/// splitmix64 finalizer so streams do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Multinomial draw of `trials` over the given probabilities (which need not
/// sum to exactly one; the remainder is an implicit discarded outcome).
std::vector<long> multinomial(std::span<const double> probabilities, long trials, Rng& rng);

}  // namespace qwalk
