#include "chebyclust/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "chebyclust/error.hpp"

namespace chebyclust {

int resolve_threads(int requested) noexcept {
  return requested > 0 ? requested : omp_get_max_threads();
}

int threads_from_env() {
  const char* raw = std::getenv(std::string(kThreadsEnvVar).c_str());
  if (raw == nullptr || *raw == '\0') return 0;
  const std::string_view text(raw);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0)
    throw InvalidInput(std::string(kThreadsEnvVar) + " must be a non-negative integer, got '" +
                       std::string(text) + "'");
  return value;
}

}  // namespace chebyclust
