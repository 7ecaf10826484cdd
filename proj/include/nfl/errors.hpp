#pragma once

#include <stdexcept>
#include <string>

namespace nfl {

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A perfect classifier (err = 0) makes every concentration bound vacuous:
// the critical tolerance is infinite.
class VacuousBoundError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The bound is only asserted for tolerances above the critical one.
class BelowPhaseTransitionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input has the wrong dimension or the wrong distribution kind.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Training or an attack produced a non-finite loss or gradient.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nfl
