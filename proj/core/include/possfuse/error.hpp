#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace possfuse {

// Base of every error raised by the library. Callers that only care about
// "did it work" can catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A point or query lies outside the frame.
class DomainError : public Error {
public:
  using Error::Error;
};

// A constructor or operation precondition was violated.
class ArgumentError : public Error {
public:
  using Error::Error;
};

// Likelihood with no strictly positive value.
class DegenerateEvidence : public Error {
public:
  using Error::Error;
};

// An alpha-cut of a GENERAL possibility function is not an interval.
class NonConsonant : public Error {
public:
  using Error::Error;
};

// Evidence sources share no state: the product vanishes or k reaches 1.
// For chains, prefix_length() is the number of leading inputs whose product
// first vanished (0 when not applicable).
class TotalConflict : public Error {
public:
  explicit TotalConflict(const std::string& what, std::size_t prefix_length = 0)
      : Error(what), prefix_length_(prefix_length) {}

  std::size_t prefix_length() const noexcept { return prefix_length_; }

private:
  std::size_t prefix_length_;
};

// The operation needs nested-focal structure the input does not have.
class UnsupportedShape : public Error {
public:
  using Error::Error;
};

// An internal consistency check failed (e.g. the two agreement integrals
// disagree). Usually means the grid is too coarse.
class NumericalError : public Error {
public:
  using Error::Error;
};

}  // namespace possfuse
