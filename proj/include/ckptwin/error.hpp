#pragma once

#include <stdexcept>
#include <string>

namespace ckptwin {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its domain (negative duration, p = 0, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The analytic model is evaluated outside the region where it holds.
/// Carries the offending raw value (a waste, a radicand, ...).
class ModelValidity : public Error {
 public:
  ModelValidity(const std::string& what, double value)
      : Error(what + " (value " + std::to_string(value) + ")"), value_(value) {}

  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// The strategy cannot run with these parameters (WithCkptI with I < Cp).
class StrategyInapplicable : public Error {
 public:
  using Error::Error;
};

/// Brute-force search found no admissible candidate.
class SearchFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ckptwin
