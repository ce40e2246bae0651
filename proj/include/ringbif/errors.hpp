#pragma once

#include <stdexcept>
#include <string>

namespace ringbif {

// Parameters outside the mathematical domain of an operation (n < 2, alpha < 1, k out of range, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two bodies share a position.
class CollisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The equilibrium orbit is not hyperbolic at the requested parameters
// (central mass at a critical value, kernel larger than the symmetry forces).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to produce a trustworthy answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ringbif
