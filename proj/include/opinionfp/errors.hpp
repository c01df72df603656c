#pragma once

#include <stdexcept>
#include <string>

namespace opinionfp {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an invalid value (parameters, sizes, configuration).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the open domain of a function, e.g. |y| >= 1.
class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The (lambda, m) pair does not satisfy the condition an operation requires.
class RegimeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Two fields defined on different grids were combined.
class GridMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A density is expected to be strictly positive and is not.
class PositivityError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// f > 0 on a set where the reference density g vanishes.
class AbsoluteContinuityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Failures of numerical machinery (overflow, singular systems, bad fits).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace opinionfp
