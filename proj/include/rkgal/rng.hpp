#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "rkgal/types.hpp"

namespace rkgal {

/// Deterministic 64-bit-seeded generator used for every random draw in the
/// library. Uniform variates use the canonical 53-bit mapping to [0, 1) so
/// that streams are identical across standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  Scalar uniform01() {
    return static_cast<Scalar>(engine_() >> 11) * 0x1.0p-53;
  }

  Scalar uniform(Scalar lo, Scalar hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives a sub-seed from a base seed and a textual tag (FNV-1a over the tag,
/// finalized with the splitmix64 mixer). Used to give each experiment cell an
/// independent, reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (h | 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace rkgal
