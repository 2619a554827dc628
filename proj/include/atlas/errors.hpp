#pragma once

#include <stdexcept>

namespace atlas {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input to a Hermitian-only operation violates symmetry beyond tolerance.
struct NonHermitianInput : Error {
  using Error::Error;
};

// The underlying eigensolver failed to converge.
struct ConvergenceFailure : Error {
  using Error::Error;
};

// Matrix dimensions are inconsistent with the declared subsystem split.
struct DimensionMismatch : Error {
  using Error::Error;
};

// A dimension argument is zero or otherwise unusable.
struct InvalidDimension : Error {
  using Error::Error;
};

// Entropic order q outside (0, inf).
struct InvalidQ : Error {
  using Error::Error;
};

// Survey configuration fails validation.
struct ConfigInvalid : Error {
  using Error::Error;
};

// Filesystem-level failure while reading or writing artifacts.
struct IOFailure : Error {
  using Error::Error;
};

}  // namespace atlas
