// Error taxonomy: contract violations (bad caller input), guard overruns
// (search space larger than the configured limit), and internal errors
// (broken invariants that indicate a bug, never a caller mistake).
#pragma once

#include <stdexcept>
#include <string>

namespace quotkit {

// Caller violated a documented precondition (CLI maps this to exit code 2).
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search would exceed the configured state limit (CLI exit code 3).
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed; this is a defect in the library itself.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace quotkit
