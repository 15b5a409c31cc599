#pragma once

#include "potts/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace potts::quadrature {

//! Tolerance, truncation and subdivision policy for the semi-infinite
//! integrals. The defaults leave two orders of magnitude of headroom below the
//! root solvers' 1e-9 absolute tolerance.
struct QuadratureSettings {
  double rel_tol = 1e-11;
  double abs_tol = 1e-15;
  int max_subdivisions = 4000;
  double truncation_safety = 1.5;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 16 ||
        !(truncation_safety >= 1.0)) {
      throw std::invalid_argument(
          "QuadratureSettings: need rel_tol > 0, abs_tol > 0, "
          "max_subdivisions >= 16, truncation_safety >= 1");
    }
  }
};

//! Copy of `cfg` whose absolute floor is measured in units of `magnitude`, a
//! typical size of the integrand. Integrals whose natural scale is far below 1
//! then keep their relative accuracy.
inline QuadratureSettings in_units_of(const QuadratureSettings &cfg,
                                      double magnitude) {
  QuadratureSettings out = cfg;
  if (std::isfinite(magnitude) && magnitude > 0.0)
    out.abs_tol = std::max(cfg.abs_tol * magnitude,
                           std::numeric_limits<double>::min());
  return out;
}

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  //! Upper integration limit actually used.
  double truncation_point = 0.0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kronrod_nodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
};

template <class F> Panel gauss_kronrod_15(F &f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kronrod_weights[j] * pair;
    if (j % 2 == 1)
      gauss += gauss_weights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  // The raw Kronrod-Gauss difference bounds the error of the 7-point rule, so
  // it is a pessimistic but honest bound for the 15-point value.
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

inline bool worse(const Panel &x, const Panel &y) { return x.error < y.error; }

//! Initial partition: geometric for wide positive ranges (power-law
//! integrands), otherwise a few equal pieces.
inline std::vector<double> initial_breakpoints(double a, double b) {
  std::vector<double> pts{a};
  if (a > 0.0 && b / a > 4.0) {
    const int n = std::min(128, static_cast<int>(std::ceil(std::log2(b / a))));
    const double ratio = std::pow(b / a, 1.0 / n);
    double x = a;
    for (int i = 1; i < n; ++i) {
      x *= ratio;
      pts.push_back(x);
    }
  } else {
    for (int i = 1; i < 4; ++i)
      pts.push_back(a + (b - a) * i / 4.0);
  }
  pts.push_back(b);
  return pts;
}

//! Globally adaptive bisection: always split the panel with the largest error
//! until the summed error meets max(rel_tol*|value|, abs_tol) less `reserve`.
template <class F>
QuadratureResult adaptive(F &f, double a, double b, double rel_tol,
                          double abs_tol, double reserve, int max_subdivisions) {
  QuadratureResult out;
  out.truncation_point = b;
  if (a == b)
    return out;

  std::vector<Panel> heap;
  const auto pts = initial_breakpoints(a, b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    heap.push_back(gauss_kronrod_15(f, pts[i], pts[i + 1]));
  out.evaluations = 15 * static_cast<long>(heap.size());
  std::make_heap(heap.begin(), heap.end(), worse);

  auto totals = [&heap] {
    double v = 0.0, e = 0.0;
    for (const auto &p : heap) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };
  auto [value, error] = totals();
  auto target = [&] {
    const double budget = std::max(rel_tol * std::abs(value), abs_tol);
    return std::max(budget - reserve, 0.5 * budget);
  };

  int since_resum = 0;
  while (error > target()) {
    if (static_cast<int>(heap.size()) >= max_subdivisions) {
      throw QuadratureError("quadrature: subdivision limit reached (estimate " +
                                std::to_string(value) + ", error " +
                                std::to_string(error) + ")",
                            value, error);
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("quadrature: panel width reached machine resolution",
                            value, error);
    }
    const Panel left = gauss_kronrod_15(f, worst.a, mid);
    const Panel right = gauss_kronrod_15(f, mid, worst.b);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
    if (++since_resum == 64) {
      std::tie(value, error) = totals();
      since_resum = 0;
    }
  }
  std::tie(value, error) = totals();
  out.value = value;
  out.error_estimate = error + reserve;
  return out;
}

} // namespace detail

//! Adaptive Gauss-Kronrod integration of f over the finite interval [a, b].
template <class F>
QuadratureResult integrate(F &&f, double a, double b,
                           const QuadratureSettings &cfg) {
  cfg.validate();
  return detail::adaptive(f, a, b, cfg.rel_tol, cfg.abs_tol, 0.0,
                          cfg.max_subdivisions);
}

//! Integrates f over [lower, inf). `tail_bound(eps)` must return a point A with
//! the analytic guarantee  int_A^inf |f| <= eps. The integral is truncated at
//! max(lower + 10, truncation_safety * A), and eps is charged to the error
//! estimate.
template <class F, class TailBound>
QuadratureResult integrate_decaying_tail(F &&f, double lower,
                                         TailBound &&tail_bound,
                                         const QuadratureSettings &cfg) {
  cfg.validate();
  // A cheap pilot fixes the scale that the relative tolerance refers to.
  const auto pilot = detail::adaptive(f, lower, lower + 10.0, 1e-4, cfg.abs_tol,
                                      0.0, cfg.max_subdivisions);
  const double eps =
      0.1 * std::max(cfg.rel_tol * std::abs(pilot.value), cfg.abs_tol);
  const double cut =
      std::max(lower + 10.0, cfg.truncation_safety * tail_bound(eps));
  auto result = detail::adaptive(f, lower, cut, cfg.rel_tol, cfg.abs_tol, eps,
                                 cfg.max_subdivisions);
  result.evaluations += pilot.evaluations;
  return result;
}

//! C(tau) = int_0^inf v (ln(1+v))^(3-tau) / (v+2)^3 dv for 4 <= tau < 5, the
//! constant that fixes the q -> 2 decay of the inflection point for
//! 4 <= tau < 5.
inline double c_tau(double tau, const QuadratureSettings &cfg = {}) {
  if (!(tau >= 4.0 && tau < 5.0))
    throw DomainError("c_tau: requires 4 <= tau < 5, got " +
                      std::to_string(tau));
  // On [0,1] the integrand behaves like v^(4-tau); v = u^m with
  // m = 2/(5-tau) turns that into a term linear in u.
  const double m = 2.0 / (5.0 - tau);
  auto head = [tau, m](double u) {
    if (u <= 0.0)
      return 0.0;
    const double v = std::pow(u, m);
    const double lv = std::log1p(v);
    return m * std::pow(u, m - 1.0) * v * std::pow(lv, 3.0 - tau) /
           std::pow(v + 2.0, 3.0);
  };
  // On [1,inf) substitute v = 1/s; the integrand decays only like
  // v^-2 (ln v)^(3-tau), so truncation would be far too expensive.
  auto tail = [tau](double s) {
    if (s <= 0.0)
      return 0.0;
    const double lv = std::log1p(1.0 / s);
    return std::pow(lv, 3.0 - tau) / std::pow(1.0 + 2.0 * s, 3.0);
  };
  const auto a = integrate(head, 0.0, 1.0, cfg);
  const auto b = integrate(tail, 0.0, 1.0, cfg);
  return a.value + b.value;
}

} // namespace potts::quadrature
