#pragma once

#include <stdexcept>
#include <string>

namespace axmap {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tensor/assignment shapes do not agree.
struct InstanceMismatchError : Error {
  using Error::Error;
};

// Requested instance exceeds the configured memory cap.
struct InstanceTooLargeError : Error {
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured cap.
struct TooLargeForExactError : Error {
  using Error::Error;
};

// Malformed input file; line/col are 1-based.
struct ParseError : Error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// Invalid argument or structurally invalid value (non-permutation, bad
// dimension index, infeasible chromosome, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Level-bound estimation saw no escape from some level (p_hat == 1).
struct UndefinedBoundError : Error {
  int level;
  UndefinedBoundError(const std::string& msg, int level_)
      : Error(msg), level(level_) {}
};

// Fewer observations than the statistic requires.
struct InsufficientSampleError : Error {
  using Error::Error;
};

// Non-positive difference fed to a log-scale interval under strict policy.
struct NonPositiveDifferenceError : Error {
  using Error::Error;
};

}  // namespace axmap
