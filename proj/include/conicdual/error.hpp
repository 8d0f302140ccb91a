#pragma once

#include <stdexcept>
#include <string>

namespace conicdual {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operation's documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis required by a construction does not hold
/// (distinct from a plain precondition violation).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// The operation is not available for this problem kind or cone form.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Input text could not be parsed. Carries a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Input parsed but is semantically invalid. Names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& msg)
      : Error(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A computed result contradicts a proven identity. This always signals a
/// bug in the engine, never a property of the input.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace conicdual
