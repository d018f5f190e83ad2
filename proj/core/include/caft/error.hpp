#pragma once

#include <stdexcept>
#include <string>

namespace caft {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or precondition was violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested law or configuration has no implementation on this path.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to reach its tolerance.
class NotConverged : public Error {
 public:
  using Error::Error;
};

/// Inverse-probability weights would exceed the positivity bound.
class PositivityViolation : public Error {
 public:
  using Error::Error;
};

/// Input or output artifacts are missing or malformed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace caft
