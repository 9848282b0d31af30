#pragma once

#include <cstdint>

namespace slowdown {

/// splitmix64 finalizer; a cheap, well-mixed 64-bit hash.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: every (master, grid, realization) triple
/// gets a statistically independent stream seed, so ensembles are
/// reproducible and order-independent.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid_index,
                                           std::uint64_t realization_index) {
    return splitmix64(splitmix64(splitmix64(master) + grid_index) + realization_index);
}

}  // namespace slowdown
