#pragma once

#include <array>
#include <cstdint>

namespace gaf {

/// Philox4x64-10 block function (Salmon et al.). Stateless: the output is a pure
/// function of (counter, key), which is what makes draws independent of thread
/// scheduling.
using PhiloxCounter = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

__extension__ using Uint128 = unsigned __int128;

inline PhiloxCounter philox4x64(PhiloxCounter c, PhiloxKey k) {
  constexpr std::uint64_t m0 = 0xD2E7470EE14C6C93ULL;
  constexpr std::uint64_t m1 = 0xCA5A826395121157ULL;
  constexpr std::uint64_t w0 = 0x9E3779B97F4A7C15ULL;
  constexpr std::uint64_t w1 = 0xBB67AE8584CAA73BULL;
  for (int round = 0; round < 10; ++round) {
    const Uint128 p0 = static_cast<Uint128>(m0) * c[0];
    const Uint128 p1 = static_cast<Uint128>(m1) * c[2];
    const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const auto lo0 = static_cast<std::uint64_t>(p0);
    const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
    const auto lo1 = static_cast<std::uint64_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += w0;
    k[1] += w1;
  }
  return c;
}

/// splitmix64 finalizer; used to derive keys and per-trial seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` within an experiment seeded by `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return mix64(seed ^ mix64(index)); }

/// Uniform in (0, 1]; never zero so log() is safe.
inline double philox_uniform(std::uint64_t x) { return static_cast<double>((x >> 11) + 1) * 0x1.0p-53; }

}  // namespace gaf
