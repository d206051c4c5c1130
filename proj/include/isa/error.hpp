#pragma once

#include <stdexcept>
#include <string>

namespace isa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or index ranges do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Real/complex tags do not agree, or an operation is real-only.
class FieldError : public Error {
 public:
  using Error::Error;
};

/// Covariance or transform is (numerically) singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Bad parameters, unknown names, malformed files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or other numerical breakdowns.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace isa
