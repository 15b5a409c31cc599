#pragma once

// Bracketed Newton iteration (with bisection fallback) and the specialised
// solvers for the critical points t_c'' < t_c' < t_c and the tau-free root T.

#include "potts/asymptotics.hpp"
#include "potts/core.hpp"
#include "potts/homogeneous.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace potts::solvers {

struct RootSolveConfig {
  double tol_t = 1e-9; // absolute tolerance on the root
  int max_iters = 200;
  QuadratureSettings quad{};

  //! A root of size `scale` cannot be resolved much below the quadrature
  //! noise; returns a message when tol_t is tighter than 10 * rel_tol * scale.
  std::optional<std::string> tolerance_warning(double scale) const {
    if (tol_t < 10.0 * quad.rel_tol * scale)
      return "tol_t = " + std::to_string(tol_t) +
             " is below 10 * quadrature rel_tol * root scale";
    return std::nullopt;
  }
};

struct RootResult {
  double root = 0.0;
  int iterations = 0;
  int bisection_steps = 0;
  //! Every point at which the function was evaluated inside the loop.
  std::vector<double> iterates;
  //! Which characterisation produced the root ("K''", "Phi", ...).
  std::string route;
  bool reduced_confidence = false;
};

//! Error from one stage of a multi-root solve.
class StageError : public SolverError {
public:
  StageError(std::string stage, const std::string &what)
      : SolverError("stage " + stage + ": " + what), stage_(std::move(stage)) {}
  const std::string &stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

inline constexpr int kSlowStepLimit = 6;

//! Newton iteration safeguarded by a sign-change bracket. `fdf(x)` returns
//! {f(x), f'(x)}. A Newton step is taken only if it lands strictly inside the
//! current bracket, otherwise the bracket is bisected. Iteration starts at
//! `start` (default: bracket midpoint).
template <class FDF>
RootResult newton_bisect_fdf(FDF &&fdf, std::pair<double, double> bracket,
                             const RootSolveConfig &cfg,
                             std::optional<double> start = std::nullopt) {
  auto [lo, hi] = bracket;
  if (!(lo < hi))
    throw BracketError("newton_bisect: empty bracket");
  const double flo = fdf(lo).first;
  const double fhi = fdf(hi).first;
  RootResult out;
  if (flo == 0.0) {
    out.root = lo;
    return out;
  }
  if (fhi == 0.0) {
    out.root = hi;
    return out;
  }
  if (!(std::signbit(flo) != std::signbit(fhi)) || std::isnan(flo) ||
      std::isnan(fhi))
    throw BracketError("newton_bisect: no sign change on [" +
                       std::to_string(lo) + ", " + std::to_string(hi) +
                       "] (f = " + std::to_string(flo) + ", " +
                       std::to_string(fhi) + ")");
  double x_neg = flo < 0.0 ? lo : hi;
  double x_pos = flo < 0.0 ? hi : lo;
  double x = start.value_or(0.5 * (lo + hi));
  // Newton steps that keep failing to halve the bracket (a far-away root of
  // a steep function) are interrupted by a bisection.
  double prev_width = hi - lo;
  int slow_steps = 0;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    out.iterations = iter;
    out.iterates.push_back(x);
    const auto [fx, dfx] = fdf(x);
    if (fx == 0.0) {
      out.root = x;
      return out;
    }
    (fx < 0.0 ? x_neg : x_pos) = x;
    const double a = std::min(x_neg, x_pos), b = std::max(x_neg, x_pos);
    if (b - a <= cfg.tol_t) {
      out.root = 0.5 * (a + b);
      return out;
    }
    slow_steps = (b - a > 0.5 * prev_width) ? slow_steps + 1 : 0;
    prev_width = b - a;
    const double newton = x - fx / dfx;
    double next;
    bool newton_step = std::isfinite(newton) && newton > a && newton < b &&
                       slow_steps < kSlowStepLimit;
    if (!newton_step)
      slow_steps = 0;
    if (newton_step) {
      next = newton;
    } else {
      next = 0.5 * (a + b);
      ++out.bisection_steps;
    }
    if (newton_step && std::abs(next - x) <= 0.5 * cfg.tol_t) {
      out.root = next;
      return out;
    }
    x = next;
  }
  throw ConvergenceError("newton_bisect: no convergence in " +
                         std::to_string(cfg.max_iters) + " iterations");
}

//! Same as newton_bisect_fdf with the function and its derivative given
//! separately.
template <class F, class DF>
RootResult newton_bisect(F &&f, DF &&df, std::pair<double, double> bracket,
                         const RootSolveConfig &cfg,
                         std::optional<double> start = std::nullopt) {
  return newton_bisect_fdf(
      [&](double x) { return std::pair{f(x), df(x)}; }, bracket, cfg, start);
}

using potts::t_equation;

//! Absolute tolerance used for T: T scales with b = ln(q-1), and the series
//! form of its equation supports a relative tolerance far below tol_t.
inline double solve_T_tolerance(double q, const RootSolveConfig &cfg) {
  return std::min(cfg.tol_t, 1e-13 * std::log(q - 1.0));
}

//! T, the unique positive root of t_equation; bracketed in
//! (ln(q-1), 1.5 ln(q-1)). Independent of tau.
inline RootResult solve_T(double q, const RootSolveConfig &cfg = {}) {
  if (!(q > 2.0))
    throw InvalidParams("solve_T: requires q > 2");
  const double b = std::log(q - 1.0);
  auto fdf = [q](double t) { return potts::detail::t_equation_scaled(q, t); };
  RootSolveConfig rel_cfg = cfg;
  rel_cfg.tol_t = solve_T_tolerance(q, cfg);
  auto r = newton_bisect_fdf(fdf, {b, 1.5 * b}, rel_cfg);
  r.route = "T-equation";
  return r;
}

namespace detail {

//! Newton-bisection in s = ln t for roots that may be many decades below 1;
//! the tolerance becomes relative, min(1e-10, tol_t / hi). `fdf` works in t.
template <class FDF>
RootResult solve_in_log(FDF &&fdf, double lo, double hi,
                        const RootSolveConfig &cfg,
                        std::optional<double> start = std::nullopt) {
  auto g = [&](double s) {
    const double t = std::exp(s);
    const auto [f, df] = fdf(t);
    return std::pair{f, df * t};
  };
  RootSolveConfig log_cfg = cfg;
  log_cfg.tol_t = std::min(1e-10, cfg.tol_t / hi);
  std::optional<double> log_start;
  if (start)
    log_start = std::log(*start);
  auto r = newton_bisect_fdf(g, {std::log(lo), std::log(hi)}, log_cfg, log_start);
  r.root = std::exp(r.root);
  for (auto &x : r.iterates)
    x = std::exp(x);
  return r;
}

//! Phi route for t_c'': Newton in s = ln t, which turns the logarithmic
//! behaviour of Phi near tau = 4 into a near-linear one.
inline RootResult solve_phi_root(const ModelParams &p, double lo, double hi,
                                 const RootSolveConfig &cfg) {
  const double q = p.q(), tau = p.tau();
  auto fdf = [&](double t) {
    return std::pair{phi(p, t, cfg.quad), -std::pow(t, 3.0 - tau) * a_kernel(q, t)};
  };
  auto r = solve_in_log(fdf, lo, hi, cfg);
  r.route = "Phi";
  return r;
}

//! Lower end of a bracket for a function that is negative near 0 and positive
//! at `hi`, found by halving from `seed`.
template <class Sign>
double descend_to_negative(Sign &&negative_at, double seed, const char *who) {
  double t = seed;
  for (int i = 0; i <= 60; ++i) {
    if (negative_at(t))
      return t;
    t *= 0.5;
  }
  throw BracketError(std::string(who) + ": no lower bracket after 60 halvings");
}

} // namespace detail

//! The bracketed factor of K'' behaves like t^2 near 0 while its terms are
//! O(1), so the K'' form loses digits to cancellation when t_c'' is small.
//! Below these scales t_c'' is taken from the Phi characterisation instead.
inline constexpr double kPhiRouteThreshold = 0.05; // on b = ln(q-1)
inline constexpr double kPhiRouteRootScale = 1e-3; // on the K''-route root

//! t_c'' via its Phi characterisation alone (also the cross-check for the K''
//! route).
inline RootResult solve_tc_pp_phi(const ModelParams &p,
                                  const RootSolveConfig &cfg = {}) {
  const double b = p.b();
  bool reduced = false;
  double lo;
  if (p.tau() == 4.0 && b < kPhiRouteThreshold) {
    // exp(-8 C(4)/b) decay: seed the bracket from the asymptotic law.
    const double c4 = quadrature::c_tau(4.0, cfg.quad);
    lo = 0.01 * b * std::exp(-8.0 * c4 / b);
    reduced = true;
    if (!(lo > std::numeric_limits<double>::min()) ||
        !(phi(p, lo, cfg.quad) > 0.0))
      throw BracketError("solve_tc_pp: t_c'' below double-precision range "
                         "(b = " + std::to_string(b) + ")");
  } else {
    double seed = 0.9 * b;
    if (b < 0.1)
      seed = std::min(seed, 0.1 * asymptotics::small_b_tcpp(p, cfg.quad).value);
    lo = detail::descend_to_negative(
        [&](double t) { return phi(p, t, cfg.quad) > 0.0; }, seed, "solve_tc_pp");
  }
  auto r = detail::solve_phi_root(p, lo, b, cfg);
  r.reduced_confidence = reduced;
  return r;
}

//! t_c'' as the zero of K'' alone, no fallback.
inline RootResult solve_tc_pp_kpp(const ModelParams &p,
                                  const RootSolveConfig &cfg = {}) {
  const double b = p.b();
  auto fdf = [&](double t) {
    const auto fb = evaluate(p, t, cfg.quad);
    return std::pair{fb.k_double_prime, fb.k_triple_prime};
  };
  double seed = 0.9 * b;
  if (b < 0.1)
    seed = std::min(seed, 0.1 * asymptotics::small_b_tcpp(p, cfg.quad).value);
  const double lo = detail::descend_to_negative(
      [&](double t) { return k_double_prime(p, t, cfg.quad) < 0.0; }, seed,
      "solve_tc_pp");
  auto r = newton_bisect_fdf(fdf, {lo, b}, cfg);
  r.route = "K''";
  return r;
}

//! t_c'', the unique positive zero of K''; lies in (0, ln(q-1)). Falls back
//! to the Phi characterisation where the K'' form is ill-conditioned.
inline RootResult solve_tc_pp(const ModelParams &p,
                              const RootSolveConfig &cfg = {}) {
  if (p.b() < kPhiRouteThreshold)
    return solve_tc_pp_phi(p, cfg);
  try {
    auto r = solve_tc_pp_kpp(p, cfg);
    if (r.root >= kPhiRouteRootScale)
      return r;
  } catch (const BracketError &) {
  }
  return solve_tc_pp_phi(p, cfg);
}

//! True when roots of size `root` are solved with the Phi-based forms of K
//! and K', which stay accurate where the closed forms cancel.
inline bool use_phi_forms(const ModelParams &p, double root) {
  return p.b() < kPhiRouteThreshold || root < kPhiRouteRootScale;
}

//! t_c', the unique positive zero of K', bracketed by (t_c'', T).
inline RootResult solve_tc_p(const ModelParams &p, const RootSolveConfig &cfg,
                             double tc_pp, double T) {
  std::function<std::pair<double, double>(double)> fdf;
  const bool via_phi = use_phi_forms(p, tc_pp);
  if (via_phi)
    fdf = [&](double t) {
      return std::pair{k_prime_via_phi(p, t, cfg.quad),
                       k_double_prime_via_phi(p, t, cfg.quad)};
    };
  else
    fdf = [&](double t) {
      const auto fb = evaluate(p, t, cfg.quad);
      return std::pair{fb.k_prime, fb.k_double_prime};
    };
  // K' is not convex on [t_c', T] in general, so Newton from T stays guarded.
  auto r = via_phi ? detail::solve_in_log(fdf, tc_pp, T, cfg, T)
                   : newton_bisect_fdf(fdf, {tc_pp, T}, cfg, T);
  r.route = via_phi ? "K' (Phi form)" : "K'";
  return r;
}

inline RootResult solve_tc_p(const ModelParams &p,
                             const RootSolveConfig &cfg = {}) {
  return solve_tc_p(p, cfg, solve_tc_pp(p, cfg).root, solve_T(p.q(), cfg).root);
}

//! t_c, the unique positive zero of K, bracketed by
//! (t_c', 2 (tau-2)/(tau-1) ln(q-1)). Newton starts at the upper end, where
//! convexity of K makes the iterates decrease monotonically onto t_c.
inline RootResult solve_tc(const ModelParams &p, const RootSolveConfig &cfg,
                           double tc_p) {
  const double upper = asymptotics::bounds(p).tc_sharp;
  std::function<std::pair<double, double>(double)> fdf;
  const bool via_phi = use_phi_forms(p, tc_p);
  if (via_phi)
    fdf = [&](double t) {
      return std::pair{k_via_phi(p, t, cfg.quad),
                       k_prime_via_phi(p, t, cfg.quad)};
    };
  else
    fdf = [&](double t) {
      const auto fb = evaluate(p, t, cfg.quad);
      return std::pair{fb.k, fb.k_prime};
    };
  auto r = via_phi ? detail::solve_in_log(fdf, tc_p, upper, cfg, upper)
                   : newton_bisect_fdf(fdf, {tc_p, upper}, cfg, upper);
  r.route = via_phi ? "K (Phi form)" : "K";
  return r;
}

inline RootResult solve_tc(const ModelParams &p,
                           const RootSolveConfig &cfg = {}) {
  return solve_tc(p, cfg, solve_tc_p(p, cfg).root);
}

struct CriticalSummary {
  double t_c_pp = 0.0;
  double t_c_p = 0.0;
  double t_c = 0.0;
  double T = 0.0;
  double gamma_c = 0.0;
  double beta_c = 0.0;
  std::map<std::string, double> residuals;
  std::string t_c_pp_route;
  bool reduced_confidence = false;
};

namespace detail {
template <class Fn> auto stage(const char *name, Fn &&fn) {
  try {
    return fn();
  } catch (const StageError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(name, e.what());
  }
}
} // namespace detail

//! Solves t_c'' -> T -> t_c' -> t_c in dependency order and derives
//! gamma_c = t_c / F0(t_c), beta_c = ln(1 + gamma_c).
inline CriticalSummary critical_summary(const ModelParams &p,
                                        const RootSolveConfig &cfg = {}) {
  CriticalSummary s;
  const auto tcpp = detail::stage("t_c_pp", [&] { return solve_tc_pp(p, cfg); });
  s.t_c_pp = tcpp.root;
  s.t_c_pp_route = tcpp.route;
  s.reduced_confidence = tcpp.reduced_confidence;
  s.T = detail::stage("T", [&] { return solve_T(p.q(), cfg); }).root;
  s.t_c_p = detail::stage("t_c_p", [&] {
              return solve_tc_p(p, cfg, s.t_c_pp, s.T);
            }).root;
  s.t_c = detail::stage("t_c", [&] { return solve_tc(p, cfg, s.t_c_p); }).root;

  detail::stage("residuals", [&] {
    const auto at_tc = evaluate(p, s.t_c, cfg.quad);
    s.gamma_c = s.t_c / at_tc.f0;
    s.beta_c = std::log1p(s.gamma_c);
    const bool via_phi = use_phi_forms(p, s.t_c_pp);
    s.residuals["K(t_c)"] =
        std::abs(via_phi ? k_via_phi(p, s.t_c, cfg.quad) : at_tc.k);
    s.residuals["K'(t_c')"] =
        std::abs(via_phi ? k_prime_via_phi(p, s.t_c_p, cfg.quad)
                         : k_prime(p, s.t_c_p, cfg.quad));
    s.residuals["K''(t_c'')"] = std::abs(
        via_phi ? k_double_prime_via_phi(p, s.t_c_pp, cfg.quad)
                : k_double_prime(p, s.t_c_pp, cfg.quad));
    s.residuals["criticality"] =
        std::abs(criticality_residual(p, s.t_c, s.gamma_c, cfg.quad));
    s.residuals["stationarity"] = std::abs(at_tc.f0 - s.t_c / s.gamma_c);
    return 0;
  });
  return s;
}

//! The tau = inf family, solved with the same bracketed Newton iteration on
//! the closed forms. The roots are ln(q-1), T and 2 ln(q-1).
inline CriticalSummary homogeneous_summary(double q,
                                           const RootSolveConfig &cfg = {}) {
  if (!(q > 2.0) || !std::isfinite(q))
    throw InvalidParams("homogeneous_summary: q must be finite and > 2");
  const double b = std::log(q - 1.0);
  CriticalSummary s;
  s.t_c_pp = detail::stage("t_c_pp", [&] {
               return newton_bisect(
                   [q](double t) { return homogeneous::k_h_double_prime(q, t); },
                   [q](double t) { return homogeneous::k_h_triple_prime(q, t); },
                   {0.5 * b, 1.5 * b}, cfg);
             }).root;
  s.t_c_pp_route = "homogeneous";
  s.T = detail::stage("T", [&] { return solve_T(q, cfg); }).root;
  s.t_c_p = detail::stage("t_c_p", [&] {
              return newton_bisect(
                  [q](double t) { return homogeneous::k_h_prime(q, t); },
                  [q](double t) { return homogeneous::k_h_double_prime(q, t); },
                  {s.t_c_pp, 1.5 * b}, cfg);
            }).root;
  s.t_c = detail::stage("t_c", [&] {
            return newton_bisect(
                [q](double t) { return homogeneous::k_h(q, t); },
                [q](double t) { return homogeneous::k_h_prime(q, t); },
                {s.t_c_p, 3.0 * b}, cfg, 3.0 * b);
          }).root;
  const double f = homogeneous::f0_h(q, s.t_c);
  s.gamma_c = s.t_c / f;
  s.beta_c = std::log1p(s.gamma_c);
  s.residuals["K(t_c)"] = std::abs(homogeneous::k_h(q, s.t_c));
  s.residuals["K'(t_c')"] = std::abs(homogeneous::k_h_prime(q, s.t_c_p));
  s.residuals["K''(t_c'')"] = std::abs(homogeneous::k_h_double_prime(q, s.t_c_pp));
  // With W = 1: ln((e^t+q-1)/q) - (q-1)/(2q) t^2/gamma - t/q.
  s.residuals["criticality"] =
      std::abs(potts::detail::log_shifted_exp(s.t_c, q) - std::log(q) -
               (q - 1.0) / (2.0 * q) * s.t_c * (s.t_c / s.gamma_c) - s.t_c / q);
  s.residuals["stationarity"] = std::abs(f - s.t_c / s.gamma_c);
  return s;
}

} // namespace potts::solvers

namespace potts::asymptotics {

//! Large-q approximation gamma_c ~ t_c together with the envelope
//! t_c < gamma_c < t_c (1 + q/(e^t_c - 1)) that follows from
//! 1 - q/(e^t+q-1) < F0(t) < 1 (equality on the right for tau = inf).
struct GammaApprox {
  double approx = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double half_width = 0.0;
};

inline GammaApprox gamma_envelope(double q, double t_c) {
  GammaApprox g;
  g.approx = t_c;
  g.lower = t_c;
  g.upper = t_c * (1.0 + q / std::expm1(t_c));
  g.half_width = 0.5 * (g.upper - g.lower);
  return g;
}

inline GammaApprox gamma_c_approx(const ModelParams &p,
                                  const solvers::RootSolveConfig &cfg = {}) {
  return gamma_envelope(p.q(), solvers::solve_tc(p, cfg).root);
}

} // namespace potts::asymptotics
