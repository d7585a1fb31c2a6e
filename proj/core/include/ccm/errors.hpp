#pragma once

#include <stdexcept>
#include <string>

namespace ccm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or malformed input data.
class InvalidDataError : public Error {
 public:
  using Error::Error;
};

/// A configuration value violates its documented range.
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// Data that is well formed but carries no usable information
/// (e.g. all samples identical when a bandwidth is requested).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// Class label outside {0, ..., k-1}.
class InvalidLabelError : public Error {
 public:
  using Error::Error;
};

/// Factorization or solve failure.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// CSV parse failure, carrying the offending 1-based row and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long row, long column);

  long row() const noexcept { return row_; }
  long column() const noexcept { return column_; }

 private:
  long row_;
  long column_;
};

/// Exhaustive search refused because the subset count is too large.
class GuardExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccm
