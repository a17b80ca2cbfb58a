#pragma once

#include <stdexcept>
#include <string>

namespace idempotoric {

/// Input rejected: malformed data, dimension mismatch, or a value outside the
/// domain of an operation. Maps to CLI exit status 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A postcondition that must hold for any valid input failed. Indicates a bug;
/// maps to CLI exit status 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_invariant(bool condition, const std::string& what) {
  if (!condition) throw InvariantViolation(what);
}

}  // namespace idempotoric
