#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gmrf {

using Rng = std::mt19937_64;

/// Independent sub-streams of a single user seed.
enum class Stream : std::uint32_t {
  innovations = 1,
  random_effects = 2,
  initial_state = 3,
  benchmark = 4,
};

/// Generator for (seed, stream, keys...). Distinct key tuples give
/// statistically independent generators; equal tuples give equal streams.
Rng substream(std::uint64_t seed, Stream stream, std::initializer_list<std::uint64_t> keys = {});

}  // namespace gmrf
