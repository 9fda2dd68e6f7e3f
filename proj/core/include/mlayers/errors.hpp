#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlayers {

/// Base of every error the library reports.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A term or equation does not fit its signature.
class SignatureError : public Error {
public:
  using Error::Error;
};

/// An enumeration would exceed the configured ceiling.
class BoundExceeded : public Error {
public:
  BoundExceeded(const std::string& what, std::size_t count)
      : Error(what + ": " + std::to_string(count) + " values exceed the enumeration ceiling"), count_(count) {}
  [[nodiscard]] std::size_t count() const noexcept { return count_; }

private:
  std::size_t count_;
};

/// A monad without a Fubini transformation was used as an outer layer.
class InnerOnlyMonad : public Error {
public:
  using Error::Error;
};

/// Bounded congruence closure did not saturate.
class Inconclusive : public Error {
public:
  using Error::Error;
};

/// A distributive law was requested for a theory with non-preserved equations.
class LawRefused : public Error {
public:
  using Error::Error;
};

/// Malformed spec or program text, with a 1-based location.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        message_(msg), line_(line), column_(column) {}
  /// Same error reported against a named source, "path:line:col: msg".
  ParseError(const ParseError& e, const std::string& source)
      : Error(source + ":" + std::to_string(e.line_) + ":" + std::to_string(e.column_) + ": " + e.message_),
        message_(e.message_), line_(e.line_), column_(e.column_) {}
  [[nodiscard]] const std::string& message() const noexcept { return message_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace mlayers
