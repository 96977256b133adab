#pragma once

#include <stdexcept>
#include <string>

namespace ztnd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when a pivot falls below the scale-relative tolerance.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Exponential feedback exceeded its windup guard.
class Overflow : public Error {
 public:
  using Error::Error;
};

/// PTCZNN evaluated at or beyond its predefined time t_c.
class PredefinedTimeExceeded : public Error {
 public:
  using Error::Error;
};

/// A target sits too close to a station's vertical line or bearings are parallel.
class GeometryDegenerate : public Error {
 public:
  using Error::Error;
};

class EmptyTrace : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace ztnd
