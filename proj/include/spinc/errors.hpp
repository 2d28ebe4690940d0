#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Degenerate input for an otherwise well-defined operation (zero quaternion,
// zero spinor, plane whose basis is not close to orthonormal, ...).
struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  // line == 0 means the error has no source position (schema errors).
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : Error(format(msg, line, column)), line(line), column(column), detail(msg) {}
  std::size_t line;
  std::size_t column;
  std::string detail;

  ParseError with_context(const std::string& where) const { return ParseError(where + ": " + detail, line, column); }

private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
    if (line == 0) return msg;
    return msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  }
};

struct NotImmersionError : Error {
  using Error::Error;
};

struct InvalidCurveError : Error {
  using Error::Error;
};

// A mathematical precondition of an analysis step does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

} // namespace spinc
