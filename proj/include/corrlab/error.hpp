#pragma once

#include <stdexcept>
#include <string>

namespace corrlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input failed a structural check (non-Hermitian matrix, bad dimension, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Weight matrix of a generalized eigenproblem is not positive definite.
class SingularWeightError : public Error {
 public:
  using Error::Error;
};

/// Parameters do not describe a physical (positive, unit-trace) state.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a scalar function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A measurement outcome with zero probability has no conditional state.
class UndefinedConditionalError : public Error {
 public:
  using Error::Error;
};

/// POVM elements do not resolve the identity.
class InvalidPovmError : public Error {
 public:
  using Error::Error;
};

/// The weak-correlation expansion has no finite Hessian for this state.
class ApproximationInvalidError : public Error {
 public:
  using Error::Error;
};

/// State file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace corrlab
