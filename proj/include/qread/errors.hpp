#pragma once

#include <stdexcept>
#include <string>

namespace qread {

/// Argument outside the documented domain of an operation.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Covariance matrix violates the uncertainty principle beyond tolerance.
struct NonPhysicalCM : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scalar minimizer could not produce a finite bracketed minimum.
struct OptimizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Truncated Fock-space object lost more trace than the configured tolerance.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense linear algebra produced results outside numerical sanity floors.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No signal number up to the configured maximum yields a positive gain.
struct NoAdvantage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qread
