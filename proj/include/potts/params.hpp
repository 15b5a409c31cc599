#pragma once

#include "potts/errors.hpp"

#include <cmath>
#include <string>

namespace potts {

//! Pareto moment mu_n = int_1^inf w^n (tau-1) w^-tau dw = (tau-1)/(tau-1-n).
inline double pareto_moment(double tau, int n) {
  if (n < 0)
    throw DomainError("pareto_moment: n must be non-negative");
  if (!(n < tau - 1.0))
    throw DomainError("pareto_moment: moment " + std::to_string(n) +
                      " diverges for tau = " + std::to_string(tau));
  return (tau - 1.0) / (tau - 1.0 - n);
}

//! The pair (q, tau): number of Potts states and Pareto exponent of the
//! vertex weight density (tau-1) w^-tau on [1, inf).
class ModelParams {
public:
  ModelParams(double q, double tau) : q_(q), tau_(tau) {
    if (!(q > 2.0) || !std::isfinite(q))
      throw InvalidParams("ModelParams: q must be finite and > 2, got " +
                          std::to_string(q));
    if (!(tau >= 4.0) || !std::isfinite(tau))
      throw InvalidParams("ModelParams: tau must be finite and >= 4, got " +
                          std::to_string(tau));
  }

  double q() const noexcept { return q_; }
  double tau() const noexcept { return tau_; }
  //! b = ln(q-1), the small parameter of the q -> 2 analysis.
  double b() const noexcept { return std::log(q_ - 1.0); }
  //! E[W] = (tau-1)/(tau-2).
  double mean_weight() const noexcept { return (tau_ - 1.0) / (tau_ - 2.0); }
  double moment(int n) const { return pareto_moment(tau_, n); }

  friend bool operator==(const ModelParams &, const ModelParams &) = default;

private:
  double q_;
  double tau_;
};

} // namespace potts
