#pragma once

#include <stdexcept>
#include <string>

namespace lenstheta {

// gcd(p,q) != 1, determinant != 1, or a p = 0 request where p > 0 is needed.
class InvalidLensData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed files, literals or rationals.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent algebra data: dimension mismatch, invalid splitting, failed cocycle.
class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A form that lies outside the family the calculus knows how to integrate.
class NonEvaluable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Factor placed where it has no meaning (Mu on the boundary, Dtheta in the bulk).
class FormDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a real function (poles, non-positive tolerances).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An oracle failed to reach its requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lenstheta
