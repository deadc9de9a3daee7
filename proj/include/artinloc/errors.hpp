#pragma once

#include <stdexcept>
#include <string>

namespace artinloc {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input (bad prime, non-associative
/// table, element of the wrong length, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two values over different prime fields met in one operation.
class ModulusMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// An enumeration or closure would exceed the configured guard.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant checked at runtime did not hold. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InvariantViolation(what);
}

}  // namespace artinloc
