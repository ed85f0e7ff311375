#pragma once

#include <stdexcept>
#include <string>

namespace gica {

/// Base class for every failure raised by the library. Callers that only
/// need a message can catch std::runtime_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The model (full, restricted or mixed) is not asymptotically stable.
class UnstableModel : public Error {
 public:
  using Error::Error;
};

/// A linear system that must be solved is singular or rank-deficient.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace gica
