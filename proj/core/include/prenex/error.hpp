#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prenex {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidOccurrence : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class ReservedName : public Error {
 public:
  using Error::Error;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

class RuleNotApplicable : public Error {
 public:
  using Error::Error;
};

class NotPrenex : public Error {
 public:
  using Error::Error;
};

class SizeBoundExceeded : public Error {
 public:
  using Error::Error;
};

class UncoveredSymbol : public Error {
 public:
  using Error::Error;
};

class ClassPreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// A trace failed to replay; `index` is the first failing step (or the
/// step count when only the final formula disagrees).
class TraceInvalid : public Error {
 public:
  TraceInvalid(std::size_t index, const std::string& what)
      : Error("trace invalid at step " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace prenex
