#ifndef UNX_PRNG_HPP
#define UNX_PRNG_HPP

#include <cstdint>

namespace unx {

/// SplitMix64 step; the whole library derives randomness from this so
/// that runs are reproducible from a single seed.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Splittable stream: (seed, task index) -> independent 64-bit seed.
/// Parallel grid cells draw from split seeds so thread count never
/// changes results.
inline uint64_t split_seed(uint64_t seed, uint64_t task) {
  uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + task * 0xd1b54a32d192ed03ULL);
  splitmix64(s);
  return splitmix64(s);
}

}  // namespace unx

#endif
