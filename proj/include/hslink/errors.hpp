#pragma once

#include <stdexcept>
#include <string>

namespace hslink {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation outside an immersion's domain, or an unsupported jet order.
struct DomainError : Error {
  using Error::Error;
};

/// Numerical breakdown: degenerate induced metric, singular Newton system,
/// ambiguous winding number, non-convergent refinement.
struct NumericalError : Error {
  using Error::Error;
};

/// The winding-number quadrature did not close to an integer multiple of 2*pi.
struct AmbiguousWindingError : NumericalError {
  using NumericalError::NumericalError;
};

/// A quantity was requested that is only defined on Legendrian immersions.
struct NonLegendrianError : Error {
  using Error::Error;
};

/// Malformed or inconsistent configuration input.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace hslink
