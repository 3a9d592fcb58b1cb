#pragma once

#include <stdexcept>
#include <string>

namespace funkfinsler {

// Base point outside (or too close to the boundary of) the chart's disc.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidChart : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateDirection : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fundamental tensor has a non-positive eigenvalue.
class ConvexityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WindTooStrong : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Finite-difference results moved more than allowed when the step was halved.
class StepSizeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// g(xi, xi) g(u, u) - g(xi, u)^2 <= 0: the flag spanned by xi and u is degenerate.
class DegenerateFlag : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHomogeneous : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An identity that must hold by construction did not.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace funkfinsler
