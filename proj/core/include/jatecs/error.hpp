#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jatecs {

// Base of every error the library throws on purpose. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller misuse: bad arguments, bad configuration, inconsistent options.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data that violates a documented format or contract.
class DataError : public Error {
 public:
  using Error::Error;
};

// A malformed line in an input file. what() always carries source:line.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : DataError(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An internal invariant does not hold. Seeing one of these is a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace jatecs
