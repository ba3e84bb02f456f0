#pragma once

#include <stdexcept>
#include <string>

namespace ncdirac {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quantum numbers that do not describe a physical bound state.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation at the Coulomb singularity r = 0.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Expectation value that does not exist (non-integrable at the origin).
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A closed form hit a vanishing denominator.
class DegeneracyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature did not reach its self-consistency target.
class RefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ncdirac
