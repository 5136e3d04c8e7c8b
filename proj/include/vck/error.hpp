#pragma once

#include <stdexcept>
#include <string>

namespace vck {

// Caller violated an operation's precondition (bad arguments, label reuse,
// exhausted pairing budget, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arithmetic domain failure: inverting zero, duplicate interpolation nodes,
// unsupported field characteristic.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A witness does not satisfy the statement the prover was asked to prove.
class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed serialized input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invariant broken inside the library; should not happen with honest inputs.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vck
