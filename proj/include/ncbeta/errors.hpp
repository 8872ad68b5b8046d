#pragma once

#include <stdexcept>
#include <string>

namespace ncbeta {

// Base class for every error this library raises on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A series hit its term budget before the stopping rule was satisfied.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, long max_terms)
      : Error(what + ": no convergence within " + std::to_string(max_terms) +
              " terms") {}
};

// An argument is outside the domain of the requested quantity.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// The parameter point is a degenerate boundary case where the requested
// quantity does not exist (for example a density with a zero shape, or a
// mixing weight with lambda1 + lambda2 = 0).
class DegenerateParameter : public Error {
 public:
  using Error::Error;
};

// A moment order is outside the supported range.
class OrderOutOfRange : public Error {
 public:
  using Error::Error;
};

// A test statistic needs a positive sample standard deviation.
class ZeroVariance : public Error {
 public:
  using Error::Error;
};

// A sample statistic was requested on an empty sample.
class EmptySample : public Error {
 public:
  using Error::Error;
};

// 128-bit exact integer arithmetic overflowed.
class ExactOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace ncbeta
