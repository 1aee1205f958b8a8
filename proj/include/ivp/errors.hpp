#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ivp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrimeError : public Error {
 public:
  using Error::Error;
};

class NotEisensteinError : public Error {
 public:
  using Error::Error;
};

class ExtensionMismatchError : public Error {
 public:
  using Error::Error;
};

// The valuation stayed invisible up to the maximum precision. Carries the
// last visible lower bound, in units of 1/e.
class PrecisionExhaustedError : public Error {
 public:
  PrecisionExhaustedError(const std::string& what, long pi_bound, int ramification)
      : Error(what), pi_bound_(pi_bound), ramification_(ramification) {}
  long pi_bound() const noexcept { return pi_bound_; }
  int ramification() const noexcept { return ramification_; }

 private:
  long pi_bound_;
  int ramification_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ZeroPolynomialError : public Error {
 public:
  using Error::Error;
};

class DegreeTooLargeError : public Error {
 public:
  using Error::Error;
};

// A prime beyond the scanned bound could not be excluded from the support
// of a principal divisor.
class TailUncertifiedError : public Error {
 public:
  using Error::Error;
};

class PrecisionMismatchError : public Error {
 public:
  using Error::Error;
};

class InvalidTorsionChainError : public Error {
 public:
  using Error::Error;
};

class SpecFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ivp
