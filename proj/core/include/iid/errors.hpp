#pragma once

#include <stdexcept>

namespace iid {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input data violates a domain invariant (negative bound, bad dimension,
/// context sum above one, ...). The message names the violated invariant.
struct ValidationError : Error {
  using Error::Error;
};

/// A transformation or query was attempted on a diagram that does not
/// satisfy the operation's structural precondition.
struct PreconditionError : Error {
  using Error::Error;
};

/// A diagram file could not be read or decoded.
struct ParseError : Error {
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured combination cap.
struct CapacityError : Error {
  using Error::Error;
};

}  // namespace iid
