#pragma once

#include <stdexcept>
#include <string>

namespace rflight {

// Argument outside the mathematical domain of an operation (negative x,
// |m| > l, r outside [0, S], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative algorithm failed to reach its tolerance; never returned silently.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrand produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : std::runtime_error(what + " at x = " + std::to_string(abscissa)),
        abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

class InsufficientData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested quantity is a distribution (Dirac delta), not a function
// value; callers must use the closed-form delta representation.
class DistributionalCase : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Geometry with sin(alpha) = 0 where it appears in a denominator.
class SingularConfiguration : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rflight
