#pragma once

#include <string_view>

namespace chebyclust {

inline constexpr std::string_view kThreadsEnvVar = "CHEBY_THREADS";

// Thread count for an OpenMP region; `requested` <= 0 means the OpenMP
// default.
int resolve_threads(int requested) noexcept;

// Value of CHEBY_THREADS, or 0 (auto) when unset. Throws InvalidInput on a
// malformed or negative value.
int threads_from_env();

}  // namespace chebyclust
