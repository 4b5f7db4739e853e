#pragma once

#include <stdexcept>
#include <string>

namespace charzero {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (composite modulus for a Legendre census, Re s <= 1 for a Dirichlet series, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument outside a configured numerical window or table limit.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole (s = 1 for zeta / the principal character).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A zero list does not cover the height range an identity needs.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to meet its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace charzero
