#pragma once

#include <stdexcept>
#include <string>

namespace dynregret {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of different dimension were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A parameter is outside the domain an operation is defined on.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A point that must lie in a feasible set does not.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// The operation exists but not for this input class (e.g. grid maxima in d > 2).
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace dynregret
