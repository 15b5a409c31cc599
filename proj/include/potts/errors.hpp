#pragma once

#include <stdexcept>
#include <string>

namespace potts {

//! Parameters outside the model's validity range (q > 2, tau >= 4).
class InvalidParams : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

//! Argument outside the domain of a closed-form evaluator (e.g. t = 0 where a
//! 1/t prefactor appears, or a divergent Pareto moment).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

//! Adaptive quadrature ran out of subdivisions before meeting its tolerance.
//! Carries the best estimate and its error so callers can report them.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string &what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_; }

private:
  double estimate_;
  double error_;
};

//! Root solver failures: either the bracket does not change sign, or the
//! iteration budget was exhausted.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BracketError : public SolverError {
public:
  using SolverError::SolverError;
};

class ConvergenceError : public SolverError {
public:
  using SolverError::SolverError;
};

} // namespace potts
