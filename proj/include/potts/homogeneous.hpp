#pragma once

// The tau -> inf limit, where every vertex weight equals 1. The critical
// points are 2 ln(q-1), T and ln(q-1).

#include "potts/core.hpp"

#include <algorithm>
#include <cmath>

namespace potts::homogeneous {

//! F0_H(t) = (e^t - 1) / (e^t + q - 1) = 1 - q / (e^t + q - 1).
inline double f0_h(double q, double t) {
  return 1.0 - q * detail::inv_shifted_exp(t, q);
}

//! K_H(t) = ln((e^t+q-1)/q) - (q+1)/(2q) t + (q-1) t / (2(e^t+q-1)).
//! Below t = 1 the equivalent form -(q-1)/2 (t h(t) - int_0^t u^2 a(u) du)
//! is used, h the T-equation function; the closed form cancels there.
inline double k_h(double q, double t) {
  if (t > 0.0 && t < 1.0) {
    auto m2_integrand = [q](double u) { return u * u * a_kernel(q, u); };
    const double scale = std::max(std::abs(m2_integrand(0.5 * t)),
                                  std::abs(m2_integrand(t)));
    const double m2 =
        quadrature::integrate(m2_integrand, 0.0, t,
                              quadrature::in_units_of({}, scale))
            .value;
    return -0.5 * (q - 1.0) * (t * t_equation(q, t) - m2);
  }
  return detail::log_shifted_exp(t, q) - std::log(q) -
         (q + 1.0) / (2.0 * q) * t +
         0.5 * (q - 1.0) * t * detail::inv_shifted_exp(t, q);
}

//! K_H'(t) = -(q-1)/2 h(t), h the left side of the T equation.
inline double k_h_prime(double q, double t) {
  return -0.5 * (q - 1.0) * t_equation(q, t);
}

inline double k_h_double_prime(double q, double t) {
  return -0.5 * (q - 1.0) * t * a_kernel(q, t);
}

//! d/dt K_H''(t); Newton slope for the inflection point.
inline double k_h_triple_prime(double q, double t) {
  // a'(x) = e^x ((q-1)^2 - 4(q-1) e^x + e^(2x)) / (e^x+q-1)^4
  const double inv = detail::inv_shifted_exp(t, q);
  const double frac = detail::exp_fraction(t, q);
  const double m = q - 1.0;
  const double a_slope = frac * inv * (m * m * inv * inv - 4.0 * m * frac * inv +
                                       frac * frac);
  return -0.5 * m * (a_kernel(q, t) + t * a_slope);
}

} // namespace potts::homogeneous
