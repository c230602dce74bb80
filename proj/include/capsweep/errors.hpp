#pragma once

#include <stdexcept>
#include <string>

namespace capsweep {

/// Base class for all validation and solver errors thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Kernel entry table is not symmetric within tolerance.
struct SymmetryViolation : Error {
  using Error::Error;
};

/// Kernel diagonal entry is zero or negative.
struct NonpositiveDiagonal : Error {
  using Error::Error;
};

/// A matrix or vector entry is negative where nonnegativity is required.
struct NegativeEntry : Error {
  using Error::Error;
};

/// A matrix or vector entry is NaN or infinite.
struct NonfiniteEntry : Error {
  using Error::Error;
};

/// Two rows of a point cloud coincide.
struct DuplicatePoints : Error {
  using Error::Error;
};

/// Riesz exponent outside the open interval (0, d).
struct AlphaOutOfRange : Error {
  using Error::Error;
};

/// Operands sized for different spaces.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Site index outside [0, n).
struct IndexOutOfRange : Error {
  using Error::Error;
};

/// Kernel fails the positive-semidefiniteness gate required by a solver.
struct NotPositiveSemidefinite : Error {
  using Error::Error;
};

/// Kernel is semidefinite but an operation needs strict positive definiteness.
struct NotStrictlyPositiveDefinite : Error {
  using Error::Error;
};

/// Problem size exceeds an enumeration bound.
struct TooLarge : Error {
  using Error::Error;
};

/// An operation over a family of measures received an empty family.
struct EmptyFamily : Error {
  using Error::Error;
};

/// A documented precondition was violated by the caller.
struct PreconditionViolated : Error {
  using Error::Error;
};

/// An internal linear program did not return an optimum.
struct LpFailure : Error {
  using Error::Error;
};

/// Malformed input file or configuration document.
struct ParseError : Error {
  using Error::Error;
};

/// An iterative solve ended without meeting its tolerance.
struct SolverFailure : Error {
  using Error::Error;
};

/// An internal consistency check failed; indicates a solver bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace capsweep
