// Search-space guard: enumerative routines count visited states against a
// limit (default 2,000,000; override with the QUOTKIT_GUARD_LIMIT
// environment variable) and throw GuardError instead of running away.
#pragma once

#include <cstdint>

#include "quotkit/errors.hpp"

namespace quotkit {

inline constexpr std::int64_t kDefaultGuardLimit = 2'000'000;

// Active limit: QUOTKIT_GUARD_LIMIT if set to a positive integer, else the
// default.  Read once per call so tests can adjust the environment.
std::int64_t guard_limit();

// Counts enumeration states and throws GuardError when the limit is hit.
class GuardCounter {
 public:
  explicit GuardCounter(const char* what) : what_(what), limit_(guard_limit()) {}

  void tick(std::int64_t steps = 1) {
    count_ += steps;
    if (count_ > limit_) {
      throw GuardError(std::string(what_) + ": search exceeded guard limit of " +
                       std::to_string(limit_) + " states");
    }
  }

  std::int64_t count() const { return count_; }

 private:
  const char* what_;
  std::int64_t limit_;
  std::int64_t count_ = 0;
};

}  // namespace quotkit
