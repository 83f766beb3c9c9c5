#pragma once

#include <stdexcept>
#include <string>

namespace tbregman {

// Base class for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the open domain of a potential or density.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A dual coordinate is outside the range of the potential's derivative.
class NoDualPointError : public Error {
 public:
  using Error::Error;
};

// A quantile map is not a diffeomorphism at the requested point
// (zero-density plateau, nonpositive quantile derivative).
class DegenerateQuantileError : public Error {
 public:
  using Error::Error;
};

// The integrand of a quadrature became non-finite.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NotSpdError : public Error {
 public:
  using Error::Error;
};

// A divergence is infinite because one density vanishes where the other does not.
class SupportError : public Error {
 public:
  using Error::Error;
};

// Malformed construction parameters (bad ranges, too few samples, bad files).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace tbregman
