#pragma once

#include <stdexcept>
#include <string>

namespace powmon {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside an operation's domain (wrong ambient, violated
/// precondition, identity where a non-unit is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An element would exceed the configured universe bound.
class UniverseError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial search ran out of its node budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed set or monoid literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An internal self-check failed. Always a bug.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace powmon
