#pragma once

#include <stdexcept>
#include <string>

namespace nqt {

/// Thrown when a caller violates an operation's precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computed result breaks an invariant it should hold by
/// construction. Indicates a bug, not bad input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace nqt
