#pragma once

#include <stdexcept>

namespace dcov {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite entries or structurally malformed data.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Sample-size or dimension mismatch.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Out-of-range or inconsistent configuration parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Statistic undefined because an input has zero variance.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; the message names the offending line and column.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Violated internal consistency check.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcov
