#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace definiens {

// Base class for every error raised by the engine. Failure of unification,
// an empty definiens or an exhausted search are values, not errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ImmutableDefinition : public Error {
 public:
  explicit ImmutableDefinition(const std::string& name)
      : Error("definition '" + name + "' is not mutable") {}
};

class UnknownClause : public Error {
 public:
  UnknownClause(const std::string& name, std::size_t clause_id)
      : Error("definition '" + name + "' has no clause " + std::to_string(clause_id)) {}
};

class UnknownDefinition : public Error {
 public:
  explicit UnknownDefinition(const std::string& name)
      : Error("unknown definition '" + name + "'") {}
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(const std::string& method, std::size_t expected, std::size_t given)
      : Error("method '" + method + "' expects " + std::to_string(expected) +
              " definition argument(s), got " + std::to_string(given)) {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MachineBusy : public Error {
 public:
  MachineBusy() : Error("machine is busy computing an answer") {}
};

class ObserverContractViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column, std::string token)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message + (token.empty() ? std::string() : " (at '" + token + "')")),
        message_(std::move(message)),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace definiens
