#pragma once

#include <stdexcept>
#include <string>

namespace recip {

// User-facing errors (bad input data, bad arguments). The CLI maps these
// to exit code 1, everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long line = -1)
      : Error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Internal failures (dimension mismatches, NaNs in iterates). Exit code 2.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

class DimensionError : public InternalError {
 public:
  using InternalError::InternalError;
};

class NumericError : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace recip
