#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace chebyclust {

// std::mt19937_64 output is fully specified by the standard; the bounded
// draw below is implemented here rather than through
// std::uniform_int_distribution, whose algorithm is implementation defined.
using Rng = std::mt19937_64;

inline constexpr std::string_view kGeneratorName = "mt19937_64/fisher-yates-rejection/v1";

// Uniform integer in [0, bound) by rejection on the top of the 64-bit range.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace chebyclust
