#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdsk {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad graph, unknown model, wrong update order.
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured size budget (state count, enumeration size, n!) was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A 64-bit counter would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Model text errors carry a 1-based source location.
class ParseError : public InputError {
 public:
  enum class Kind { lex, syntax, semantic };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
      : InputError(format(kind, line, column, message)),
        kind_(kind),
        line_(line),
        column_(column),
        message_(message) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(Kind kind, std::size_t line, std::size_t column,
                            const std::string& message) {
    const char* label = kind == Kind::lex ? "lex error" : kind == Kind::syntax ? "parse error"
                                                                               : "semantic error";
    return std::string(label) + " at " + std::to_string(line) + ":" + std::to_string(column) +
           ": " + message;
  }

  Kind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace sdsk
