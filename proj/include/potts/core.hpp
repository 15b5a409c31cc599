#pragma once

// Closed-form evaluators for the Pareto-weighted annealed Potts model. Every
// quantity that needs an integral goes through d_integral(), the single
// semi-infinite integral
//
//     D(t) = int_1^inf w^(1-tau) / (e^(tw) + q - 1) dw,
//
// so K, K', K'' and F0 evaluated at one t share one quadrature call.

#include "potts/errors.hpp"
#include "potts/params.hpp"
#include "potts/quadrature.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace potts {

using quadrature::QuadratureResult;
using quadrature::QuadratureSettings;

namespace detail {

//! 1 / (e^x + q - 1) without overflow for large x.
inline double inv_shifted_exp(double x, double q) {
  if (x <= 0.0)
    return 1.0 / (std::exp(x) + q - 1.0);
  const double s = std::exp(-x);
  return s / (1.0 + (q - 1.0) * s);
}

//! e^x / (e^x + q - 1).
inline double exp_fraction(double x, double q) {
  return 1.0 / (1.0 + (q - 1.0) * std::exp(-x));
}

//! ln(e^x + q - 1).
inline double log_shifted_exp(double x, double q) {
  const double b = std::log(q - 1.0);
  if (x > b)
    return x + std::log1p((q - 1.0) * std::exp(-x));
  return b + std::log1p(std::exp(x - b));
}

//! Smallest u in [lo, hi] with g(u) >= 0 for increasing g (bisection).
template <class G> double first_nonnegative(G &&g, double lo, double hi) {
  if (g(lo) >= 0.0)
    return lo;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * (1.0 + std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

inline void require_nonnegative(double t, const char *who) {
  if (!(t >= 0.0))
    throw DomainError(std::string(who) + ": requires t >= 0");
}

inline void require_positive(double t, const char *who) {
  if (!(t > 0.0))
    throw DomainError(std::string(who) + ": requires t > 0");
}

} // namespace detail

//! Truncation point A for D(t): the integrand is bounded both by
//! w^(1-tau) e^(-tw), giving a tail A^(1-tau) e^(-tA) / t, and by w^(1-tau)/q,
//! giving A^(2-tau) / (q (tau-2)). The smaller admissible A wins.
inline double d_integral_truncation(const ModelParams &p, double t,
                                    double eps) {
  const double tau = p.tau();
  double a_pow = std::pow(eps * p.q() * (tau - 2.0), -1.0 / (tau - 2.0));
  if (!(t > 0.0))
    return std::max(1.0, a_pow);
  const double need = -std::log(eps * t);
  const double u = detail::first_nonnegative(
      [&](double u) { return (tau - 1.0) * u + t * std::exp(u) - need; }, 0.0,
      800.0);
  return std::max(1.0, std::min(a_pow, std::exp(u)));
}

//! Below this t, D is evaluated as D(0) - D1(t) with D(0) = 1/(q(tau-2)).
inline constexpr double kDComplementBelow = 1.0 / 32.0;

//! D1(t) = D(0) - D(t) = int_1^inf w^(1-tau) (1 - e^(-tw)) /
//! (q (1 + (q-1) e^(-tw))) dw. For small t the combinations in K, K' and F0
//! cancel against D(0), and D1 is what the quadrature resolves to relative
//! accuracy.
inline QuadratureResult d_complement_result(const ModelParams &p, double t,
                                            const QuadratureSettings &cfg = {}) {
  detail::require_nonnegative(t, "d_complement");
  const double q = p.q(), tau = p.tau();
  const double power = 1.0 - tau;
  auto integrand = [=](double w) {
    const double s = std::exp(-t * w);
    return std::pow(w, power) * -std::expm1(-t * w) /
           (q * (1.0 + (q - 1.0) * s));
  };
  // The integrand is below w^(1-tau)/q, so the tail past A is at most
  // A^(2-tau)/(q(tau-2)).
  auto tail = [&](double eps) {
    return std::max(1.0, std::pow(eps * q * (tau - 2.0), -1.0 / (tau - 2.0)));
  };
  return quadrature::integrate_decaying_tail(
      integrand, 1.0, tail, quadrature::in_units_of(cfg, integrand(1.0)));
}

//! D(t) with its quadrature diagnostics.
inline QuadratureResult d_integral_result(const ModelParams &p, double t,
                                          const QuadratureSettings &cfg = {}) {
  detail::require_nonnegative(t, "d_integral");
  const double q = p.q();
  if (t > 0.0 && t <= kDComplementBelow) {
    auto r = d_complement_result(p, t, cfg);
    r.value = 1.0 / (q * (p.tau() - 2.0)) - r.value;
    return r;
  }
  const double power = 1.0 - p.tau();
  auto integrand = [=](double w) {
    return std::pow(w, power) * detail::inv_shifted_exp(t * w, q);
  };
  auto tail = [&](double eps) { return d_integral_truncation(p, t, eps); };
  return quadrature::integrate_decaying_tail(
      integrand, 1.0, tail, quadrature::in_units_of(cfg, integrand(1.0)));
}

inline double d_integral(const ModelParams &p, double t,
                         const QuadratureSettings &cfg = {}) {
  return d_integral_result(p, t, cfg).value;
}

//! dD/dt = ((tau-2) D - 1/(e^t+q-1)) / t, for t > 0.
inline double d_integral_derivative_from(const ModelParams &p, double t,
                                         double d) {
  detail::require_positive(t, "d_integral_derivative");
  return ((p.tau() - 2.0) * d - detail::inv_shifted_exp(t, p.q())) / t;
}

inline double d_integral_derivative(const ModelParams &p, double t,
                                    const QuadratureSettings &cfg = {}) {
  detail::require_positive(t, "d_integral_derivative");
  return d_integral_derivative_from(p, t, d_integral(p, t, cfg));
}

// The *_from overloads take a precomputed D(t) so callers can share one
// quadrature across several quantities.

inline double f0_from(const ModelParams &p, double /*t*/, double d) {
  return 1.0 - p.q() * (p.tau() - 2.0) * d;
}

inline double k_from(const ModelParams &p, double t, double d) {
  const double q = p.q(), tau = p.tau();
  return (tau - 2.0) / (tau - 1.0) *
             (detail::log_shifted_exp(t, q) - std::log(q)) +
         (1.0 / (tau - 1.0) - (q + 1.0) / (2.0 * q)) * t +
         (tau - 2.0) * (tau - 3.0) / (2.0 * (tau - 1.0)) * t * (q - 1.0) * d;
}

inline double k_prime_from(const ModelParams &p, double t, double d) {
  const double q = p.q(), tau = p.tau();
  return 0.5 * (q - 1.0) *
         (1.0 / q - (tau - 2.0) * detail::inv_shifted_exp(t, q) +
          (tau - 2.0) * (tau - 3.0) * d);
}

namespace detail {
// Bracketed factor of K'': t e^t/E^2 - (tau-3)/E + (tau-2)(tau-3) D.
inline double k2_factor(const ModelParams &p, double t, double d) {
  const double q = p.q(), tau = p.tau();
  const double inv = inv_shifted_exp(t, q);
  return t * exp_fraction(t, q) * inv - (tau - 3.0) * inv +
         (tau - 2.0) * (tau - 3.0) * d;
}
} // namespace detail

inline double k_double_prime_from(const ModelParams &p, double t, double d) {
  detail::require_positive(t, "k_double_prime");
  return (p.q() - 1.0) * (p.tau() - 2.0) / (2.0 * t) *
         detail::k2_factor(p, t, d);
}

//! d/dt K''(t), used as the Newton slope when solving K'' = 0.
inline double k_triple_prime_from(const ModelParams &p, double t, double d) {
  detail::require_positive(t, "k_triple_prime");
  const double q = p.q(), tau = p.tau();
  const double inv = detail::inv_shifted_exp(t, q);
  const double frac = detail::exp_fraction(t, q);
  const double dd = d_integral_derivative_from(p, t, d);
  // e^t(q-1-e^t)/E^2 = frac * (q-1-e^t)/E = frac * (inv*(q-1) - frac)
  const double factor_slope = frac * inv + t * frac * ((q - 1.0) * inv - frac) * inv +
                              (tau - 3.0) * frac * inv +
                              (tau - 2.0) * (tau - 3.0) * dd;
  const double c = (q - 1.0) * (tau - 2.0) / 2.0;
  return c * (factor_slope / t - detail::k2_factor(p, t, d) / (t * t));
}

inline double f0(const ModelParams &p, double t,
                 const QuadratureSettings &cfg = {}) {
  if (t > 0.0 && t <= kDComplementBelow)
    return p.q() * (p.tau() - 2.0) * d_complement_result(p, t, cfg).value;
  return f0_from(p, t, d_integral(p, t, cfg));
}

inline double k(const ModelParams &p, double t,
                const QuadratureSettings &cfg = {}) {
  return k_from(p, t, d_integral(p, t, cfg));
}

inline double k_prime(const ModelParams &p, double t,
                      const QuadratureSettings &cfg = {}) {
  return k_prime_from(p, t, d_integral(p, t, cfg));
}

inline double k_double_prime(const ModelParams &p, double t,
                             const QuadratureSettings &cfg = {}) {
  detail::require_positive(t, "k_double_prime");
  return k_double_prime_from(p, t, d_integral(p, t, cfg));
}

//! All D-based quantities at one t, from one quadrature call. At t = 0 the
//! second and third derivatives are reported by their limit value 0.
struct FunctionBundle {
  double t = 0.0;
  double d = 0.0;
  double k = 0.0;
  double k_prime = 0.0;
  double k_double_prime = 0.0;
  double k_triple_prime = 0.0;
  double f0 = 0.0;
  double d_error = 0.0;
};

inline FunctionBundle evaluate(const ModelParams &p, double t,
                               const QuadratureSettings &cfg = {}) {
  const bool complement = t > 0.0 && t <= kDComplementBelow;
  const auto dr =
      complement ? d_complement_result(p, t, cfg) : d_integral_result(p, t, cfg);
  FunctionBundle out;
  out.t = t;
  out.d = complement ? 1.0 / (p.q() * (p.tau() - 2.0)) - dr.value : dr.value;
  out.d_error = dr.error_estimate;
  out.k = k_from(p, t, out.d);
  out.k_prime = k_prime_from(p, t, out.d);
  if (t > 0.0) {
    out.k_double_prime = k_double_prime_from(p, t, out.d);
    out.k_triple_prime = k_triple_prime_from(p, t, out.d);
  }
  out.f0 = complement ? p.q() * (p.tau() - 2.0) * dr.value
                      : f0_from(p, t, out.d);
  return out;
}

//! E[ln(e^(tW) + q - 1)] = ln(e^t+q-1) + t/(tau-2) - (q-1) t D(t), obtained
//! by integrating the Pareto expectation by parts.
inline double expected_log_term(const ModelParams &p, double t,
                                const QuadratureSettings &cfg = {}) {
  detail::require_nonnegative(t, "expected_log_term");
  const double q = p.q();
  return detail::log_shifted_exp(t, q) + t / (p.tau() - 2.0) -
         (q - 1.0) * t * d_integral(p, t, cfg);
}

//! Left side of the criticality condition p(t, gamma) = p(0, gamma):
//!   E[ln((e^(tW)+q-1)/q)]/E[W] - (q-1)/(2q) t (t/gamma) - t/q.
inline double criticality_residual(const ModelParams &p, double t, double gamma,
                                   const QuadratureSettings &cfg = {}) {
  detail::require_nonnegative(t, "criticality_residual");
  if (!(gamma > 0.0))
    throw DomainError("criticality_residual: requires gamma > 0");
  const double q = p.q();
  return (expected_log_term(p, t, cfg) - std::log(q)) / p.mean_weight() -
         (q - 1.0) / (2.0 * q) * t * (t / gamma) - t / q;
}

//! a(x) = ((q-1) e^x - e^(2x)) / (e^x+q-1)^3; positive below ln(q-1), zero
//! there, negative above.
inline double a_kernel(double q, double x) {
  if (!(x >= 0.0))
    throw DomainError("a_kernel: requires x >= 0");
  const double b = std::log(q - 1.0);
  const double s = std::exp(-x);
  const double denom = std::pow(1.0 + (q - 1.0) * s, 3);
  // (q-1)e^x - e^(2x) = -(q-1) e^x expm1(x-b), scaled by e^(-3x).
  if (x - b > 1.0)
    return -(q - 1.0) * (std::exp(-x - b) - s * s) / denom;
  return -(q - 1.0) * s * s * std::expm1(x - b) / denom;
}

//! Phi(t) = int_t^inf x^(3-tau) a(x) dx. Its unique positive zero is the
//! inflection point of F0. Split at ln(q-1) so each piece has fixed sign.
inline double phi(const ModelParams &p, double t,
                  const QuadratureSettings &cfg = {}) {
  detail::require_positive(t, "phi");
  const double q = p.q(), tau = p.tau(), b = p.b();
  const double power = 3.0 - tau;
  auto integrand = [=](double x) {
    return std::pow(x, power) * a_kernel(q, x);
  };
  double head = 0.0;
  const double start = std::max(t, b);
  if (t < b)
    head = quadrature::integrate(integrand, t, b,
                                 quadrature::in_units_of(cfg, integrand(t)))
               .value;
  // |a(x)| <= e^(-x) beyond ln(q-1), so the tail past A is at most
  // A^(3-tau) e^(-A) once A >= 1.
  auto tail_bound = [&](double eps) {
    const double need = -std::log(eps);
    const double u = detail::first_nonnegative(
        [&](double u) { return -power * u + std::exp(u) - need; }, 0.0, 10.0);
    return std::max({1.0, start, std::exp(u)});
  };
  const auto tail = quadrature::integrate_decaying_tail(
      integrand, start, tail_bound,
      quadrature::in_units_of(cfg, std::abs(integrand(start + 1.0))));
  return head + tail.value;
}

namespace detail {

//! g(t) = q t - expm1(t) + (q-1) expm1(-t) = q E^2 e^(-t) h(t), where h is
//! the left side of the T equation. For t < 1 the Taylor series
//! sum_{n>=2} c_n t^n/n! with c_n = q-2 (n even), -q (n odd) avoids the
//! cancellation between O(t) terms when q is close to 2. Returns {g, g'}.
inline std::pair<double, double> t_equation_scaled(double q, double t) {
  if (t >= 1.0)
    return {q * t - std::expm1(t) + (q - 1.0) * std::expm1(-t),
            q - std::exp(t) - (q - 1.0) * std::exp(-t)};
  double g = 0.0, dg = 0.0;
  double power = t; // t^(n-1)/(n-1)!
  for (int n = 2; n <= 40; ++n) {
    const double c = (n % 2 == 0) ? q - 2.0 : -q;
    dg += c * power;
    power *= t / n;
    g += c * power;
    if (std::abs(power) < 1e-18 * std::abs(g))
      break;
  }
  return {g, dg};
}

} // namespace detail

//! Left side of the equation for T: t e^t/E^2 + 1/E - 1/q, E = e^t + q - 1.
//! Its derivative is t a(t).
inline double t_equation(double q, double t) {
  return detail::t_equation_scaled(q, t).first * detail::exp_fraction(t, q) *
         detail::inv_shifted_exp(t, q) / q;
}

//! K''(t) = -(q-1)(tau-2)/2 t^(tau-3) Phi(t); well conditioned for small t,
//! where the closed form cancels.
inline double k_double_prime_via_phi(const ModelParams &p, double t,
                                     const QuadratureSettings &cfg = {}) {
  return -0.5 * (p.q() - 1.0) * (p.tau() - 2.0) * std::pow(t, p.tau() - 3.0) *
         phi(p, t, cfg);
}

//! K'(t) = -(q-1)/2 (t^(tau-2) Phi(t) + h(t)), h the left side of the T
//! equation; integrating K'' by parts from 0 removes the cancellation.
inline double k_prime_via_phi(const ModelParams &p, double t,
                              const QuadratureSettings &cfg = {}) {
  return -0.5 * (p.q() - 1.0) *
         (std::pow(t, p.tau() - 2.0) * phi(p, t, cfg) + t_equation(p.q(), t));
}

//! K(t) = -(q-1)/2 (t^(tau-1) Phi(t)/(tau-1) + t h(t)
//!                  - (tau-2)/(tau-1) int_0^t u^2 a(u) du).
inline double k_via_phi(const ModelParams &p, double t,
                        const QuadratureSettings &cfg = {}) {
  const double q = p.q(), tau = p.tau();
  auto m2_integrand = [q](double u) { return u * u * a_kernel(q, u); };
  const double m2 =
      quadrature::integrate(
          m2_integrand, 0.0, t,
          quadrature::in_units_of(cfg, std::max(std::abs(m2_integrand(0.5 * t)),
                                                std::abs(m2_integrand(t)))))
          .value;
  return -0.5 * (q - 1.0) *
         (std::pow(t, tau - 1.0) * phi(p, t, cfg) / (tau - 1.0) +
          t * t_equation(q, t) - (tau - 2.0) / (tau - 1.0) * m2);
}

//! psi(y) = y(1 + ln y) + q - 1 - (y+q-1)^2 / q; psi(e^t) = 0 defines T.
//! Evaluated as y g(ln y)/q with g the scaled T-equation function, which is
//! the same expression free of cancellation near y = 1.
inline double psi(double q, double y) {
  if (!(y > 0.0))
    throw DomainError("psi: requires y > 0");
  return y * detail::t_equation_scaled(q, std::log(y)).first / q;
}

//! varphi(y) = y^2(1+y)^2 - (1+y)(1+y^2) - 3y(1+y^2) ln y, positive for y > 1.
inline double varphi(double y) {
  return y * y * (1.0 + y) * (1.0 + y) - (1.0 + y) * (1.0 + y * y) -
         3.0 * y * (1.0 + y * y) * std::log(y);
}

} // namespace potts
