#pragma once

#include <cstdint>
#include <random>

namespace isomlab {

using Rng = std::mt19937_64;

/// Mixes a master seed with a stream and index into an independent seed
/// (splitmix64 finalizer). Per-sample streams make parallel loops produce
/// the same draws regardless of thread count.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index = 0) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ stream) ^ (index * 0xd6e8feb86659fd93ULL));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

}  // namespace isomlab
