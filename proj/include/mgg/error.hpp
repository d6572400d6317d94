#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mgg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different node universes or have mismatched shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A size or index argument is outside the supported range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A label or name does not resolve.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Division by a zero norm.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A match was rejected while rewriting; the message names the violated morphism.
class MatchError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mgg
