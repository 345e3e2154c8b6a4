#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rcqr::rng {

// Counter-based generation: every random quantity is a pure function of a
// 64-bit key and a 64-bit counter, so operators can be regenerated in any
// order and from any thread.

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Output number `counter` of a SplitMix64 stream seeded with `key`.
constexpr std::uint64_t bits(std::uint64_t key, std::uint64_t counter) noexcept {
  return splitmix64(key + (counter + 1) * kGolden);
}

/// Seed of trial `index` under `master`; used for per-trial streams so that
/// adding trials never changes earlier ones.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return bits(master, index);
}

/// Independent sub-stream key for a tagged purpose.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t tag) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(tag * kGolden + 0x6A09E667F3BCC909ULL));
}

/// Uniform in the open interval (0, 1).
inline double uniform_open(std::uint64_t b) noexcept {
  return (static_cast<double>(b >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by multiply-shift.
inline std::uint64_t below(std::uint64_t b, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(b) * n) >> 64);
}

/// Box-Muller pair for counter pair (2p, 2p+1); element 0 is the cosine
/// branch and element 1 the sine branch.
struct NormalPair {
  double first;
  double second;
};

inline NormalPair normal_pair(std::uint64_t key, std::uint64_t pair) noexcept {
  const double u1 = uniform_open(bits(key, 2 * pair));
  const double u2 = uniform_open(bits(key, 2 * pair + 1));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

/// Standard normal number `index` of stream `key`.
inline double normal(std::uint64_t key, std::uint64_t index) noexcept {
  const NormalPair p = normal_pair(key, index / 2);
  return (index % 2 == 0) ? p.first : p.second;
}

}  // namespace rcqr::rng
