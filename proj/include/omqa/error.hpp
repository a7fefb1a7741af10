#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace omqa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 1-based position in a source text.
struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceLocation where)
      : Error(std::to_string(where.line) + ":" + std::to_string(where.column) +
              ": " + message),
        location_(where) {}

  SourceLocation location() const { return location_; }

 private:
  SourceLocation location_;
};

/// Relation used with an arity or partition that contradicts its declaration.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// An oracle could not decide within its budget and the caller cannot proceed.
class UnresolvedError : public Error {
 public:
  using Error::Error;
};

}  // namespace omqa
