#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace majcirc {

enum class ErrorKind {
  invalid_argument,
  parse,
  structure,
  cap_exceeded,
  precondition,
  inconsistent_model,
  encoder_bug,
  unsatisfiable,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the 1-based line number of the offending line
/// (0 when the problem is not tied to a line, e.g. empty input).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + reason),
        line_(line), reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace majcirc
