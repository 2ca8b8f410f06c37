#pragma once

#include <stdexcept>
#include <string>

namespace burn {

// Bad value for the operation, e.g. a negative length or m out of range.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input outside a routine's stated contract (the caller should have checked).
struct PreconditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// SquareForest asked for a forest whose order is not a perfect square.
struct NotSquareOrder : DomainError {
  using DomainError::DomainError;
};

// A bounded scan over a sequence ran past its guard without finding the
// required pattern.
struct GuardExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input; the message carries the line number.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace burn
