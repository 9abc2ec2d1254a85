#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ahn {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent graph input.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Protocol definitions violating the process invariants.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A resolved transition that does not apply to the configuration.
class ActionError : public Error {
 public:
  using Error::Error;
};

// Enumeration or search exceeding a configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ahn
