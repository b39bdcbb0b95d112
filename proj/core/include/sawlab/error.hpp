#pragma once

#include <stdexcept>
#include <string>

namespace sawlab {

/// Precondition violated by the caller.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a configured enumeration or sampling budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root finding or a branch computation failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// f'(z) vanished where a derivative ratio was needed.
class SingularMapError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace sawlab
