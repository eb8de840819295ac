#pragma once

#include <stdexcept>
#include <string>

namespace rigidity {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input (bad JSON, bad CSV, missing file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on a parameter was violated.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to bracket or converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rigidity
