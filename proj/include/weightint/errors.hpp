#pragma once

#include <stdexcept>

namespace weightint {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A matrix that must be Hermitian fails the tolerance check.
class NonHermitianInput : public Error {
public:
  using Error::Error;
};

/// The iterative eigensolver did not converge.
class ConvergenceFailure : public Error {
public:
  using Error::Error;
};

/// Two operands have incompatible dimensions.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Infinite-horizon evaluation requested with a non-decaying weight (rate <= 0).
class NonDecayingWeight : public Error {
public:
  using Error::Error;
};

/// A time grid with fewer than two points.
class DegenerateGrid : public Error {
public:
  using Error::Error;
};

/// A state vector or density matrix violating its normalization invariants.
class InvalidState : public Error {
public:
  using Error::Error;
};

/// An input file that does not match the expected schema.
class MalformedInputFile : public Error {
public:
  using Error::Error;
};

/// A precondition violation on a scalar argument (negative time, hbar <= 0, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace weightint
