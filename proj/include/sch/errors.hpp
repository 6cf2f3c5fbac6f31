#pragma once

#include <stdexcept>
#include <string>

namespace sch {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate a documented precondition
// (dimension mismatch, empty input, bad index, eps <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Dataset content is not acceptable (probability range, duplicates, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed dataset or graph text.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Input geometry violates general position or is degenerate within eps.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// The request is well-formed but outside what the implementation supports
// (dimension, enumeration size guard).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace sch
