#pragma once

#include <stdexcept>
#include <string>

namespace teamcov {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed mission space (non-convex outer, overlapping obstacles, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain, e.g. an agent
/// position that is not in the feasible region.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range model parameters (sensing constants, weights, roster).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Scenario file could not be read or validated.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace teamcov
