#pragma once

// Closed-form bounds, q -> inf limit ratios and the leading-order q -> 2
// behaviour of the inflection point t_c''.

#include "potts/params.hpp"
#include "potts/quadrature.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace potts::asymptotics {

enum class RegimeTag { TAU_EQ_4, TAU_IN_4_5, TAU_EQ_5, TAU_GT_5 };

inline std::string_view to_string(RegimeTag tag) {
  switch (tag) {
  case RegimeTag::TAU_EQ_4:
    return "TAU_EQ_4";
  case RegimeTag::TAU_IN_4_5:
    return "TAU_IN_4_5";
  case RegimeTag::TAU_EQ_5:
    return "TAU_EQ_5";
  case RegimeTag::TAU_GT_5:
    return "TAU_GT_5";
  }
  return "?";
}

//! Exact comparison on the input value: tau = 4 and tau = 5 are their own
//! regimes.
inline RegimeTag classify_regime(double tau) {
  if (!(tau >= 4.0))
    throw DomainError("classify_regime: requires tau >= 4");
  if (tau == 4.0)
    return RegimeTag::TAU_EQ_4;
  if (tau < 5.0)
    return RegimeTag::TAU_IN_4_5;
  if (tau == 5.0)
    return RegimeTag::TAU_EQ_5;
  return RegimeTag::TAU_GT_5;
}

struct BoundSet {
  double tc_simple = 0.0;   // t_c   < 2 ln(q-1)
  double tcp_simple = 0.0;  // t_c'  < 1.5 ln(q-1)
  double tcpp_simple = 0.0; // t_c'' < ln(q-1)
  double tc_sharp = 0.0;    // t_c   < 2 (tau-2)/(tau-1) ln(q-1)
  //! Conjectured t_c > 2 (tau-5)/(tau-4) ln(q-1). Absent at tau = 4 (the
  //! coefficient is undefined), 0 on (4, 5] where it is uninformative.
  std::optional<double> tc_conjectured_lower;
  std::pair<double, double> T_bound_pair; // ln(q-1) < T < 1.5 ln(q-1)
};

inline BoundSet bounds(const ModelParams &p) {
  const double b = p.b(), tau = p.tau();
  BoundSet out;
  out.tc_simple = 2.0 * b;
  out.tcp_simple = 1.5 * b;
  out.tcpp_simple = b;
  out.tc_sharp = 2.0 * (tau - 2.0) / (tau - 1.0) * b;
  if (tau > 5.0)
    out.tc_conjectured_lower = 2.0 * (tau - 5.0) / (tau - 4.0) * b;
  else if (tau > 4.0)
    out.tc_conjectured_lower = 0.0;
  out.T_bound_pair = {b, 1.5 * b};
  return out;
}

//! (2 mu_3/mu_4 ln(q-1), 2 mu_0/mu_1 ln(q-1)); the lower member needs a finite
//! fourth moment, i.e. tau > 5.
inline std::pair<std::optional<double>, double>
moment_sandwich(const ModelParams &p) {
  const double b = p.b(), tau = p.tau();
  std::optional<double> lower;
  if (tau - 1.0 > 4.0)
    lower = 2.0 * pareto_moment(tau, 3) / pareto_moment(tau, 4) * b;
  const double upper = 2.0 * pareto_moment(tau, 0) / pareto_moment(tau, 1) * b;
  return {lower, upper};
}

//! q -> inf limits of t_c, t_c', t_c'' divided by ln(q-1).
struct LimitRatios {
  double tc = 0.0, tcp = 0.0, tcpp = 0.0;
};

inline LimitRatios limit_ratios(double tau) {
  if (!(tau >= 4.0))
    throw DomainError("limit_ratios: requires tau >= 4");
  if (std::isinf(tau))
    return {2.0, 1.0, 1.0};
  return {2.0 * (tau - 2.0) / (tau - 1.0), 1.0, 1.0};
}

//! Constants of the q -> 2 decay laws; only the one belonging to the regime
//! of tau is set.
struct DecayConstants {
  std::optional<double> k1, k2, k3, k4;
  std::optional<double> c_tau;
};

inline DecayConstants decay_constants(double tau,
                                      const quadrature::QuadratureSettings &cfg = {}) {
  DecayConstants out;
  switch (classify_regime(tau)) {
  case RegimeTag::TAU_EQ_4:
    out.c_tau = quadrature::c_tau(4.0, cfg);
    out.k1 = 8.0 * *out.c_tau;
    break;
  case RegimeTag::TAU_IN_4_5:
    out.c_tau = quadrature::c_tau(tau, cfg);
    out.k2 = std::pow(8.0 * (tau - 4.0) * *out.c_tau, -1.0 / (tau - 4.0));
    break;
  case RegimeTag::TAU_EQ_5:
    out.k3 = 1.0;
    break;
  case RegimeTag::TAU_GT_5:
    out.k4 = std::isinf(tau) ? 1.0 : (tau - 5.0) / (tau - 4.0);
    break;
  }
  return out;
}

struct SmallBApprox {
  double value = 0.0;
  RegimeTag regime = RegimeTag::TAU_EQ_4;
  //! b < 0.1: inside the range where a leading-order law is worth quoting.
  bool trustworthy = false;
  std::string warning;
};

//! Leading-order t_c'' as b = ln(q-1) -> 0, given b directly.
inline SmallBApprox small_b_tcpp_at(double tau, double b,
                                    const quadrature::QuadratureSettings &cfg = {}) {
  if (!(b > 0.0))
    throw DomainError("small_b_tcpp: requires b > 0");
  SmallBApprox out;
  out.regime = classify_regime(tau);
  const auto k = decay_constants(tau, cfg);
  switch (out.regime) {
  case RegimeTag::TAU_EQ_4:
    out.value = b * std::exp(-*k.k1 / b);
    break;
  case RegimeTag::TAU_IN_4_5:
    out.value =
        std::pow(b / (8.0 * (tau - 4.0) * *k.c_tau), 1.0 / (tau - 4.0));
    break;
  case RegimeTag::TAU_EQ_5:
    // b / |ln b|, which is b / ln(1/b) on the relevant side b < 1.
    out.value = b / std::abs(std::log(b));
    break;
  case RegimeTag::TAU_GT_5:
    out.value = *k.k4 * b;
    break;
  }
  out.trustworthy = b < 0.1;
  if (b >= 1.0)
    out.warning = "b >= 1: far outside the small-b regime";
  else if (!out.trustworthy)
    out.warning = "b >= 0.1: leading-order estimate only";
  return out;
}

inline SmallBApprox small_b_tcpp(const ModelParams &p,
                                 const quadrature::QuadratureSettings &cfg = {}) {
  return small_b_tcpp_at(p.tau(), p.b(), cfg);
}

} // namespace potts::asymptotics
