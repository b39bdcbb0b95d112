#pragma once

#include <cstdint>
#include <random>

namespace sawlab {

using Rng = std::mt19937_64;

/// Seeds an independent generator for substream `stream` of a run seeded
/// with `seed`. Streams are decorrelated with a SplitMix64 finalizer, so
/// ensembles split into fixed task indices stay bit-reproducible regardless
/// of how many threads execute them.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sawlab
