#pragma once

#include <stdexcept>
#include <string>

namespace equimap {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input does not satisfy a precondition (wrong grid, non-unit vectors, ...).
struct InvalidInput : Error {
  using Error::Error;
};

// Two objects that must live on the same grid do not.
struct GridMismatch : Error {
  using Error::Error;
};

// Mass at or above the admissibility threshold for reconstruction.
struct ThresholdViolation : Error {
  using Error::Error;
};

// |psi_2| reached 1, or another admissibility condition failed numerically.
struct AdmissibilityFailure : Error {
  using Error::Error;
};

// A fixed-point or series iteration failed to contract; message carries a trace.
struct ConvergenceFailure : Error {
  using Error::Error;
};

}  // namespace equimap
