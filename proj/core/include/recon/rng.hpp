#pragma once

#include <cstdint>
#include <random>

namespace recon {

// All randomized components draw raw 32-bit words from std::mt19937 (a fixed
// algorithm with a standardized output sequence) through these helpers, so
// seeded runs reproduce byte-identically across platforms and standard
// libraries. std::uniform_int_distribution is implementation-defined and is
// deliberately not used.
using Rng = std::mt19937;

inline std::uint32_t next_u32(Rng& rng) {
  return static_cast<std::uint32_t>(rng());
}

/// Threshold for "true with probability p" under a single u32 draw.
inline std::uint64_t chance_threshold(double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return std::uint64_t{1} << 32;
  return static_cast<std::uint64_t>(p * 4294967296.0 + 0.5);
}

/// Consumes exactly one draw; true with probability threshold / 2^32.
inline bool chance_u32(Rng& rng, std::uint64_t threshold) {
  return next_u32(rng) < threshold;
}

/// Unbiased uniform integer in [lo, hi] by rejection sampling. Consumes at
/// least one draw.
inline int uniform_int(Rng& rng, int lo, int hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - lo + 1;
  const std::uint64_t limit = (std::uint64_t{1} << 32) - ((std::uint64_t{1} << 32) % range);
  std::uint64_t draw = next_u32(rng);
  while (draw >= limit) draw = next_u32(rng);
  return lo + static_cast<int>(draw % range);
}

}  // namespace recon
