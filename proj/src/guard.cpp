#include "quotkit/guard.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace quotkit {

std::int64_t guard_limit() {
  const char* env = std::getenv("QUOTKIT_GUARD_LIMIT");
  if (env == nullptr || *env == '\0') return kDefaultGuardLimit;
  std::int64_t value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value <= 0) return kDefaultGuardLimit;
  return value;
}

}  // namespace quotkit
