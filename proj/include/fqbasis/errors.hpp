#pragma once

#include <stdexcept>
#include <string>

namespace fqbasis {

// The caller broke an operation's contract (bad argument, unmet hypothesis).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands come from two different fields.
class FieldMismatch : public PreconditionError {
 public:
  FieldMismatch() : PreconditionError("operands belong to different fields") {}
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("inverse of zero") {}
};

// A proved statement failed on a concrete input. Never caught internally:
// if this fires, either the implementation or the mathematics is wrong.
class LemmaViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fqbasis
