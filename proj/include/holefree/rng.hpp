// Deterministic keyed random values (splitmix64). Used only where the spec of
// an operation calls for reproducible pseudo-randomness, e.g. perturbation
// offsets keyed by (seed, point, axis); never for anything load-bearing in a
// verifier.
#pragma once

#include <cstdint>

namespace holefree {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stateless stream: the same (seed, a, b, c) always yields the same word, and
// distinct key tuples decorrelate.
inline std::uint64_t keyed_rand(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (b + 0xd1b54a32d192ed03ULL));
  h = splitmix64(h ^ (c + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

}  // namespace holefree
