#pragma once

#include <cstdint>
#include <random>

namespace hapaxprior::detail {

// The standard distributions are implementation defined; these are not, so
// seeded outputs are identical across standard libraries.

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

inline double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hapaxprior::detail
