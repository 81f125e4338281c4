#pragma once

#include <stdexcept>
#include <string>

namespace moyal {

// Precondition on the parameters or inputs is violated.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical estimate (quadrature tail, series truncation, fit) exceeds its tolerance.
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shapes or parameters of operands do not match.
struct DimensionError : DomainError {
  using DomainError::DomainError;
};

// The operation is defined only on a sub-case (e.g. Omega = 1).
struct UnsupportedError : DomainError {
  using DomainError::DomainError;
};

}  // namespace moyal
