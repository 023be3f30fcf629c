#pragma once

#include <stdexcept>
#include <string>

namespace divseq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic on values outside an operation's domain (division by zero,
/// valuation of the zero function, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial text or job file. Line and column are 1-based;
/// zero means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(message), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// An input violates a mathematical hypothesis of the requested computation
/// (torsion base point, nP = Q, singular curve, ...).
class HypothesisError : public Error {
 public:
  HypothesisError(std::string kind, const std::string& message)
      : Error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Divisors built on different registry generations were combined.
class GenerationMismatch : public Error {
 public:
  using Error::Error;
};

/// A result could not be certified exactly (an invariant that theory
/// guarantees was observed to fail).
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace divseq
