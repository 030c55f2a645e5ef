#pragma once

#include <stdexcept>
#include <string>

namespace memnet {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input vector/matrix dimensions don't match what the operation expects.
struct InputShapeError : Error { using Error::Error; };

// Two identical input points (or otherwise degenerate data) were supplied.
struct DuplicateInputError : Error { using Error::Error; };

// A numeric argument is outside its documented domain.
struct InvalidArgumentError : Error { using Error::Error; };

// A value does not fit in the fixed-width type it must be stored in.
struct NumericOverflowError : Error { using Error::Error; };

// Random search for a projection direction exhausted its attempt budget.
struct DirectionSearchError : Error { using Error::Error; };

// No collision-free offset exists for a compression step (should not
// happen when the preconditions hold; kept as a hard failure).
struct CompressionInfeasibleError : Error { using Error::Error; };

// Requested compression target is below what the construction can reach.
struct InvalidTargetError : Error { using Error::Error; };

// An architecture vector violates the basic constraints (e.g. width < 3).
struct ArchitectureError : Error { using Error::Error; };

// A capacity certificate is malformed or does not cover the dataset.
struct CertificateError : Error { using Error::Error; };

// Parameter search for a sigmoidal approximation failed to converge.
struct ApproxSearchError : Error { using Error::Error; };

// The per-stage error budget could not be met while smoothing a network.
struct TransformBudgetError : Error { using Error::Error; };

}  // namespace memnet
