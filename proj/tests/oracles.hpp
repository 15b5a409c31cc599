#pragma once

// Reference computations that share no code with the library: composite
// Simpson on fixed grids, plain bisection and finite differences.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

//! Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)> &f, double a, double b,
                      long n) {
  if (n % 2)
    ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (long i = 1; i < n; ++i)
    s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

//! D(t) = int_1^inf w^(1-tau)/(e^(tw)+q-1) dw, mapped to (0, 1] by w = 1/u:
//! int_0^1 u^(tau-3) e^(-t/u) / (1 + (q-1) e^(-t/u)) du.
inline double d_integral(double q, double tau, double t, long n = 1L << 16) {
  auto f = [=](double u) {
    if (u <= 0.0)
      return 0.0;
    const double s = std::exp(-t / u);
    return std::pow(u, tau - 3.0) * s / (1.0 + (q - 1.0) * s);
  };
  return simpson(f, 0.0, 1.0, n);
}

//! a(x) = ((q-1) e^x - e^(2x)) / (e^x+q-1)^3, straight from the definition.
inline double a_kernel(double q, double x) {
  const double e = std::exp(x);
  return ((q - 1.0) * e - e * e) / std::pow(e + q - 1.0, 3);
}

//! Phi(t) = int_t^inf x^(3-tau) a(x) dx with x = e^s, truncated 60 units
//! past the larger of t and ln(q-1), where |a| < e^(-60).
inline double phi(double q, double tau, double t, long n = 1L << 18) {
  const double upper = std::max(t, std::log(q - 1.0)) + 60.0;
  auto f = [=](double s) {
    const double x = std::exp(s);
    return std::pow(x, 4.0 - tau) * a_kernel(q, x);
  };
  return simpson(f, std::log(t), std::log(upper), n);
}

//! C(tau) = int_0^inf v (ln(1+v))^(3-tau)/(v+2)^3 dv with v = e^s. The
//! integrand decays like e^((5-tau)s) to the left and e^(-s) to the right.
inline double c_tau(double tau, long n = 1L << 20) {
  auto f = [=](double s) {
    const double v = std::exp(s);
    return std::exp(2.0 * s + (3.0 - tau) * std::log(std::log1p(v)) -
                    3.0 * std::log(v + 2.0));
  };
  return simpson(f, -45.0 / (5.0 - tau), 45.0, n);
}

//! Fourth-order central difference.
inline double derivative(const std::function<double(double)> &f, double x,
                         double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

//! Plain bisection to an absolute width tol.
inline double bisect(const std::function<double(double)> &f, double lo, double hi,
                     double tol = 1e-13) {
  double flo = f(lo);
  if ((flo < 0) == (f(hi) < 0))
    throw std::runtime_error("oracle::bisect: no sign change");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

//! E[ln(e^(tW)+q-1)] for Pareto W, integrated directly with w = 1/u.
inline double expected_log(double q, double tau, double t, long n = 1L << 16) {
  auto f = [=](double u) {
    if (u <= 0.0)
      return 0.0;
    return (tau - 1.0) * std::pow(u, tau - 2.0) *
           (t / u + std::log1p((q - 1.0) * std::exp(-t / u)));
  };
  return simpson(f, 0.0, 1.0, n);
}

//! K(t) from its definition as the criticality function at gamma = t/F0(t):
//! (E[ln(e^(tW)+q-1)] - ln q)/E[W] - (q-1)/(2q) t F0(t) - t/q.
inline double k_function(double q, double tau, double t) {
  const double f0 = 1.0 - q * (tau - 2.0) * d_integral(q, tau, t);
  const double mean_w = (tau - 1.0) / (tau - 2.0);
  return (expected_log(q, tau, t) - std::log(q)) / mean_w -
         (q - 1.0) / (2.0 * q) * t * f0 - t / q;
}

} // namespace oracle
