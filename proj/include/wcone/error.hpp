#pragma once

#include <stdexcept>
#include <string>

namespace wcone {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contract violation on input: variant mismatch, malformed matrix,
/// bad weights, unparsable JSON, out-of-range parameter.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The brute-force oracle refused an instance beyond its enumeration limits.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace wcone
