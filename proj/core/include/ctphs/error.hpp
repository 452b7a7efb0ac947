#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ctphs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Stable machine-readable category ("parameter", "numeric", ...).
  virtual const char* category() const noexcept { return "error"; }
};

/// An argument violates an operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "parameter"; }
};

/// Kernel operations defined for ε = 1 only; real projective spaces are
/// handled through the even part of the sphere of the same d.
class UseLiftError : public ParameterError {
 public:
  using ParameterError::ParameterError;
  const char* category() const noexcept override { return "use-lift"; }
};

/// A computation produced non-finite or otherwise unusable values.
class NumericError : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "numeric"; }
};

/// The operation is not available for this kind of space.
class UnsupportedKind : public Error {
 public:
  using Error::Error;
  const char* category() const noexcept override { return "unsupported-kind"; }
};

/// A construction ran out of its resource budget. `diagnostics` describes
/// the partial state reached before giving up.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::string diagnostics)
      : Error(what), diagnostics_(std::move(diagnostics)) {}
  const char* category() const noexcept override { return "budget-exceeded"; }
  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace ctphs
