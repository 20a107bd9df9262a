#pragma once

#include <stdexcept>
#include <string>

namespace cvhg {

/// Violated precondition of a symbolic or numerical operation (bad vertex,
/// degenerate parameter, detached mode, malformed document).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a grid would exceed the configured memory cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvhg
