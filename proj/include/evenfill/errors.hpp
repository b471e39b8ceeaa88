#pragma once

#include <stdexcept>

namespace evenfill {

// Bad argument to an operation (size mismatch, value out of range, ...).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold for the input.
class PreconditionError : public ArgumentError {
public:
  using ArgumentError::ArgumentError;
};

// Malformed configuration record (distribution spec, run config, file parse).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A numerical routine could not reach its tolerance.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A mathematically guaranteed property failed to hold; either a bug or an
// invalid measure slipped past validation.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// File could not be opened / read / written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace evenfill
