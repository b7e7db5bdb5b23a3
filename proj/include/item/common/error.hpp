#pragma once

#include <stdexcept>
#include <string>

namespace item {

/// Input violates a documented precondition (bad dimensions, out-of-range qp, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file or stream does not match its declared format.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bitstream is truncated or carries an illegal syntax element.
class CorruptStream : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace item
