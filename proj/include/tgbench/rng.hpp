#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "tgbench/types.hpp"

namespace tgbench {

// 64-bit mixing step (splitmix64 finalizer). Used both for seed derivation
// and for cheap stateless jitter inside the fixture generator.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ mix64(v));
}

inline std::uint64_t hash_combine(std::uint64_t h, std::string_view s) {
  std::uint64_t acc = 0xcbf29ce484222325ull;
  for (unsigned char c : s) acc = (acc ^ c) * 0x100000001b3ull;
  return hash_combine(h, acc);
}

// Seeded RNG with portable bounded draws. std::uniform_int_distribution is
// implementation-defined, so bounded sampling is done by rejection here to
// keep sequences identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tgbench
