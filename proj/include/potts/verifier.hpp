#pragma once

// Named pass/fail battery of the bounds, identities, sign criteria and
// residuals that the critical points must satisfy at one (q, tau).

#include "potts/asymptotics.hpp"
#include "potts/core.hpp"
#include "potts/homogeneous.hpp"
#include "potts/parallel.hpp"
#include "potts/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace potts::verifier {

enum class CheckKind { inequality, identity, sign_pattern, residual };

inline std::string_view to_string(CheckKind kind) {
  switch (kind) {
  case CheckKind::inequality:
    return "inequality";
  case CheckKind::identity:
    return "identity";
  case CheckKind::sign_pattern:
    return "sign_pattern";
  case CheckKind::residual:
    return "residual";
  }
  return "?";
}

//! One record. For an inequality lhs < rhs the margin is rhs - lhs and must
//! exceed the strictness floor; for an identity or residual the margin is the
//! tolerance minus the deviation. Non-mandatory records never affect
//! all_passed.
struct Check {
  std::string name;
  CheckKind kind = CheckKind::inequality;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool mandatory = true;
  std::string note;
};

enum class ReportStatus { ok, invalid_params, solver_failure };

inline std::string_view to_string(ReportStatus s) {
  switch (s) {
  case ReportStatus::ok:
    return "ok";
  case ReportStatus::invalid_params:
    return "invalid_params";
  case ReportStatus::solver_failure:
    return "solver_failure";
  }
  return "?";
}

struct VerificationReport {
  //! Raw inputs; kept as plain numbers so rejected points can be reported.
  double q = 0.0;
  double tau = 0.0;
  std::vector<Check> checks;
  //! Conjunction of the mandatory checks (false unless status is ok).
  bool all_passed = false;
  ReportStatus status = ReportStatus::ok;
  std::string failed_stage;
  std::string error;
  //! Names of checks not run because an earlier stage failed.
  std::vector<std::string> skipped;
  std::optional<solvers::CriticalSummary> summary;

  //! Conjunction of every check, conjectures included.
  bool all_passed_strict() const {
    return status == ReportStatus::ok &&
           std::all_of(checks.begin(), checks.end(),
                       [](const Check &c) { return c.passed; });
  }

  const Check *find(std::string_view name) const {
    for (const auto &c : checks)
      if (c.name == name)
        return &c;
    return nullptr;
  }
};

struct VerifyOptions {
  solvers::RootSolveConfig solve{};
  //! Sample count for the sign-pattern checks.
  int sign_samples = 1000;
  bool include_conjectures = true;
};

//! Stable list of check names produced for a point with exponent tau
//! (tau = inf selects the homogeneous battery).
inline std::vector<std::string> check_names(double tau, bool conjectures = true) {
  if (std::isinf(tau))
    return {"ordering.tcpp_positive", "ordering.tcpp_lt_tcp", "ordering.tcp_lt_tc",
            "sign_pattern.K", "sign_pattern.K1", "sign_pattern.K2",
            "root.tc_closed_form", "root.tcp_closed_form", "root.tcpp_closed_form",
            "bound.T_lower", "bound.T_upper", "envelope.gamma_c_lower",
            "envelope.gamma_c_upper", "residual.stationarity"};
  std::vector<std::string> names = {
      "ordering.tcpp_positive",    "ordering.tcpp_lt_tcp",
      "ordering.tcp_lt_tc",        "sign_pattern.K",
      "sign_pattern.K1",           "sign_pattern.K2",
      "bound.tc_simple",           "bound.tcp_simple",
      "bound.tcpp_simple",         "bound.tc_sharp",
      "bound.T_lower",             "bound.T_upper",
      "bound.tcp_lt_T",            "identity.k_ratio_at_2b",
      "identity.newton_step_tc",   "identity.newton_step_tcp",
      "identity.d_derivative",     "identity.homogeneous_prime",
      "identity.homogeneous_value", "envelope.f0_lower",
      "envelope.f0_upper",         "envelope.gamma_c_lower",
      "envelope.gamma_c_upper",    "residual.K_at_tc",
      "residual.K1_at_tcp",        "residual.K2_at_tcpp",
      "residual.stationarity",     "residual.criticality",
      "psi.A1_lower",              "psi.A1_upper",
      "psi.unique_zero_Y",         "varphi.positive",
      "root.tcpp_phi_agreement",   "info.newton_step_tcp_vs_root"};
  if (tau == 4.0)
    names.push_back("bound.tcp_below_b_tau4");
  if (conjectures)
    names.push_back("conjecture.tc_lower");
  return names;
}

namespace detail {

struct KValues {
  double k = 0.0, k1 = 0.0, k2 = 0.0;
};

//! K, K', K'' at t; the Phi-based forms are used at small scale.
inline KValues k_values(const ModelParams &p, double t,
                        const QuadratureSettings &cfg, bool via_phi) {
  if (via_phi)
    return {k_via_phi(p, t, cfg), k_prime_via_phi(p, t, cfg),
            k_double_prime_via_phi(p, t, cfg)};
  const auto fb = evaluate(p, t, cfg);
  return {fb.k, fb.k_prime, fb.k_double_prime};
}

struct SignScan {
  int changes = 0;
  bool negative_first = false;
  bool positive_last = false;
};

inline SignScan scan_signs(const std::vector<double> &values) {
  SignScan s;
  int last = 0;
  for (double v : values) {
    const int sg = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (sg == 0)
      continue;
    if (last == 0)
      s.negative_first = sg < 0;
    else if (sg != last)
      ++s.changes;
    last = sg;
  }
  s.positive_last = last > 0;
  return s;
}

inline Check make_check(std::string name, CheckKind kind, double lhs,
                        double rhs, double margin) {
  Check c;
  c.name = std::move(name);
  c.kind = kind;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = margin;
  return c;
}

class Builder {
public:
  explicit Builder(std::vector<Check> &out) : out_(out) {}

  //! Strict lhs < rhs with margin rhs - lhs > floor.
  Check &less(std::string name, double lhs, double rhs, double floor) {
    auto c = make_check(std::move(name), CheckKind::inequality, lhs, rhs, rhs - lhs);
    c.passed = c.margin > floor;
    return push(std::move(c));
  }

  //! |lhs - rhs| <= tol.
  Check &equal(std::string name, double lhs, double rhs, double tol,
               CheckKind kind = CheckKind::identity) {
    auto c = make_check(std::move(name), kind, lhs, rhs, tol - std::abs(lhs - rhs));
    c.passed = c.margin >= 0.0;
    return push(std::move(c));
  }

  Check &residual(std::string name, double value, double limit) {
    auto c = make_check(std::move(name), CheckKind::residual, value, limit,
                        limit - value);
    c.passed = c.margin >= 0.0;
    return push(std::move(c));
  }

  Check &signs(std::string name, const std::vector<double> &values,
               const std::string &sampling) {
    const auto s = scan_signs(values);
    auto c = make_check(std::move(name), CheckKind::sign_pattern,
                        static_cast<double>(s.changes), 1.0, 0.0);
    c.passed = s.changes == 1 && s.negative_first && s.positive_last;
    c.margin = c.passed ? 0.0 : -1.0;
    c.note = sampling;
    if (!s.negative_first)
      c.note += "; not negative first";
    if (!s.positive_last)
      c.note += "; not positive last";
    return push(std::move(c));
  }

  Check &push(Check c) {
    out_.push_back(std::move(c));
    return out_.back();
  }

private:
  std::vector<Check> &out_;
};

//! Sample points on (0, upper]: equispaced, or log-spaced from `lowest`/100
//! when the smallest root lies below the first equispaced sample.
inline std::vector<double> sample_points(double upper, double lowest, int n,
                                         std::string &description) {
  std::vector<double> ts(n);
  if (lowest > upper / n) {
    for (int i = 0; i < n; ++i)
      ts[i] = upper * (i + 1) / n;
    description = std::to_string(n) + " equispaced samples";
  } else {
    const double a = std::log(lowest / 100.0), b = std::log(upper);
    for (int i = 0; i < n; ++i)
      ts[i] = std::exp(a + (b - a) * (i + 1) / n);
    description = std::to_string(n) + " log-spaced samples";
  }
  return ts;
}

//! Five-point central difference.
template <class F> double derivative_5pt(F &&f, double t, double h) {
  return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
}

//! Checks that do not depend on the solved roots.
//! psi is evaluated without cancellation, so its signs are taken as computed.
inline void psi_checks(Builder &b, double q) {
  const double lo = q - 1.0, hi = std::pow(q - 1.0, 1.5);
  const double psi_lo = psi(q, lo), psi_hi = psi(q, hi);
  b.less("psi.A1_lower", 0.0, psi_lo, 0.0);
  b.less("psi.A1_upper", psi_hi, 0.0, 0.0);
  // psi > 0 at the left end, < 0 at the right end: bisect for Y.
  double a = lo, c = hi;
  for (int i = 0; i < 200 && c - a > 1e-15 * c; ++i) {
    const double m = 0.5 * (a + c);
    (psi(q, m) > 0.0 ? a : c) = m;
  }
  const double y = 0.5 * (a + c);
  auto &ch = b.less("psi.unique_zero_Y", 0.5 * q, y, 0.0);
  ch.note = "Y located by bisection on [q-1, (q-1)^1.5]";
}

inline void varphi_check(Builder &b, const std::vector<double> &extra) {
  std::vector<double> ys = {1.5, 2.0, std::exp(1.0), 5.0, 10.0, 100.0};
  for (double y : extra)
    if (y > 1.25 && std::isfinite(y) && y < 1e6)
      ys.push_back(y);
  double worst = std::numeric_limits<double>::infinity(), at = 0.0;
  bool ok = true;
  for (double y : ys) {
    const double v = varphi(y);
    const double scale = y * y * (1.0 + y) * (1.0 + y);
    ok = ok && v > 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (v / scale < worst) {
      worst = v / scale;
      at = y;
    }
  }
  auto c = make_check("varphi.positive", CheckKind::inequality, 0.0, worst, worst);
  c.passed = ok;
  c.note = "minimum of varphi(y)/(y^2(1+y)^2) over sampled y > 1, at y = " +
           std::to_string(at);
  b.push(std::move(c));
}

} // namespace detail

//! Homogeneous (tau = inf) battery: closed-form roots, ordering, sign
//! patterns and the gamma_c envelope.
inline VerificationReport verify_homogeneous(double q, const VerifyOptions &opt = {}) {
  VerificationReport rep;
  rep.q = q;
  rep.tau = std::numeric_limits<double>::infinity();
  if (!(q > 2.0) || !std::isfinite(q)) {
    rep.status = ReportStatus::invalid_params;
    rep.error = "q must be finite and > 2";
    rep.skipped = check_names(rep.tau, opt.include_conjectures);
    return rep;
  }
  solvers::CriticalSummary s;
  try {
    s = solvers::homogeneous_summary(q, opt.solve);
  } catch (const solvers::StageError &e) {
    rep.status = ReportStatus::solver_failure;
    rep.failed_stage = e.stage();
    rep.error = e.what();
    rep.skipped = check_names(rep.tau, opt.include_conjectures);
    return rep;
  }
  rep.summary = s;
  detail::Builder b(rep.checks);
  const double bq = std::log(q - 1.0);
  const double floor = 10.0 * opt.solve.tol_t;
  b.less("ordering.tcpp_positive", 0.0, s.t_c_pp, floor);
  b.less("ordering.tcpp_lt_tcp", s.t_c_pp, s.t_c_p, floor);
  b.less("ordering.tcp_lt_tc", s.t_c_p, s.t_c, floor);

  std::string sampling;
  const auto ts =
      detail::sample_points(3.0 * bq, s.t_c_pp, opt.sign_samples, sampling);
  std::vector<double> kv, k1, k2;
  for (double t : ts) {
    kv.push_back(homogeneous::k_h(q, t));
    k1.push_back(homogeneous::k_h_prime(q, t));
    k2.push_back(homogeneous::k_h_double_prime(q, t));
  }
  b.signs("sign_pattern.K", kv, sampling);
  b.signs("sign_pattern.K1", k1, sampling);
  b.signs("sign_pattern.K2", k2, sampling);

  const double root_tol = 10.0 * opt.solve.tol_t;
  b.equal("root.tc_closed_form", s.t_c, 2.0 * bq, root_tol);
  b.equal("root.tcp_closed_form", s.t_c_p, s.T, root_tol);
  b.equal("root.tcpp_closed_form", s.t_c_pp, bq, root_tol);
  const double floor_T = 10.0 * solvers::solve_T_tolerance(q, opt.solve);
  b.less("bound.T_lower", bq, s.T, floor_T);
  b.less("bound.T_upper", s.T, 1.5 * bq, floor_T);
  const auto env = asymptotics::gamma_envelope(q, s.t_c);
  b.less("envelope.gamma_c_lower", env.lower, s.gamma_c, floor);
  // F0_H is the lower F0 envelope itself, so gamma_c sits on the upper end.
  b.equal("envelope.gamma_c_upper", s.gamma_c, env.upper,
          1e-12 * env.upper)
      .note = "equality for tau = inf";
  b.residual("residual.stationarity", s.residuals.at("stationarity"), 1e-8);

  rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const Check &c) { return c.passed || !c.mandatory; });
  return rep;
}

namespace detail {
inline void run_checks(VerificationReport &rep, const ModelParams &p,
                       const solvers::CriticalSummary &s, const VerifyOptions &opt);
} // namespace detail

//! Full battery at one (q, tau). Solver failures produce a report with the
//! failed stage and every check listed as skipped.
inline VerificationReport verify(const ModelParams &p, const VerifyOptions &opt = {}) {
  VerificationReport rep;
  rep.q = p.q();
  rep.tau = p.tau();
  solvers::CriticalSummary s;
  try {
    s = solvers::critical_summary(p, opt.solve);
  } catch (const solvers::StageError &e) {
    rep.status = ReportStatus::solver_failure;
    rep.failed_stage = e.stage();
    rep.error = e.what();
    rep.skipped = check_names(p.tau(), opt.include_conjectures);
    return rep;
  }
  rep.summary = s;
  try {
    detail::run_checks(rep, p, s, opt);
  } catch (const std::exception &e) {
    rep.status = ReportStatus::solver_failure;
    rep.failed_stage = "checks";
    rep.error = e.what();
    rep.all_passed = false;
    return rep;
  }
  rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const Check &c) { return c.passed || !c.mandatory; });
  return rep;
}

namespace detail {
inline void run_checks(VerificationReport &rep, const ModelParams &p,
                       const solvers::CriticalSummary &s, const VerifyOptions &opt) {
  const auto &cfg = opt.solve;
  const auto &quad = cfg.quad;
  const double q = p.q(), tau = p.tau(), bq = p.b();
  detail::Builder b(rep.checks);

  const bool via_phi = solvers::use_phi_forms(p, s.t_c_pp);
  // Strictness floor: ten solver tolerances. At small scale the roots are
  // solved to relative accuracy in ln t, so the floor scales with the root.
  auto floor_for = [&](double scale) {
    return via_phi ? 10.0 * 1e-10 * std::abs(scale) : 10.0 * cfg.tol_t;
  };

  b.less("ordering.tcpp_positive", 0.0, s.t_c_pp, via_phi ? 0.0 : floor_for(0));
  b.less("ordering.tcpp_lt_tcp", s.t_c_pp, s.t_c_p, floor_for(s.t_c_p));
  b.less("ordering.tcp_lt_tc", s.t_c_p, s.t_c, floor_for(s.t_c));

  std::string sampling;
  const auto ts =
      detail::sample_points(3.0 * bq, s.t_c_pp, opt.sign_samples, sampling);
  std::vector<double> kv, k1, k2;
  kv.reserve(ts.size());
  k1.reserve(ts.size());
  k2.reserve(ts.size());
  for (double t : ts) {
    const auto v = detail::k_values(p, t, quad, via_phi);
    kv.push_back(v.k);
    k1.push_back(v.k1);
    k2.push_back(v.k2);
  }
  b.signs("sign_pattern.K", kv, sampling);
  b.signs("sign_pattern.K1", k1, sampling);
  b.signs("sign_pattern.K2", k2, sampling);

  const auto bs = asymptotics::bounds(p);
  b.less("bound.tc_simple", s.t_c, bs.tc_simple, floor_for(s.t_c));
  b.less("bound.tcp_simple", s.t_c_p, bs.tcp_simple, floor_for(s.t_c_p));
  b.less("bound.tcpp_simple", s.t_c_pp, bs.tcpp_simple, floor_for(s.t_c_pp));
  b.less("bound.tc_sharp", s.t_c, bs.tc_sharp, floor_for(s.t_c));
  const double floor_T = 10.0 * solvers::solve_T_tolerance(q, cfg);
  b.less("bound.T_lower", bs.T_bound_pair.first, s.T, floor_T);
  b.less("bound.T_upper", s.T, bs.T_bound_pair.second, floor_T);
  b.less("bound.tcp_lt_T", s.t_c_p, s.T, floor_for(s.t_c_p));

  // Newton-step identities. K(2b) = 2b/(tau-1) K'(2b), so the first step from
  // 2b lands on 2 (tau-2)/(tau-1) b; K'(T) = T/(tau-2) K''(T), so the first
  // step from T lands on (tau-3)/(tau-2) T.
  const bool small_b = bq < solvers::kPhiRouteThreshold;
  const auto at2b = detail::k_values(p, 2.0 * bq, quad, small_b);
  const double rel = 1e-9;
  {
    const double lhs = at2b.k, rhs = 2.0 * bq / (tau - 1.0) * at2b.k1;
    b.equal("identity.k_ratio_at_2b", lhs, rhs, rel * std::abs(rhs));
    const double step = 2.0 * bq - at2b.k / at2b.k1;
    b.equal("identity.newton_step_tc", step, bs.tc_sharp, rel * bs.tc_sharp);
  }
  const auto atT = detail::k_values(p, s.T, quad, small_b);
  const double step_tcp = s.T - atT.k1 / atT.k2;
  const double step_closed = (tau - 3.0) / (tau - 2.0) * s.T;
  b.equal("identity.newton_step_tcp", step_tcp, step_closed, rel * step_closed);

  // Pointwise identities are checked at t_c, or at t = 1 when t_c is so small
  // that D(t_c) equals D(0) in double precision.
  const double t_id = s.t_c > 1e-3 ? s.t_c : 1.0;
  const std::string at_note =
      s.t_c > 1e-3 ? "evaluated at t = t_c" : "evaluated at t = 1";
  {
    const double h = 1e-3 * t_id;
    const double fd = detail::derivative_5pt(
        [&](double t) { return d_integral(p, t, quad); }, t_id, h);
    const double exact = d_integral_derivative(p, t_id, quad);
    b.equal("identity.d_derivative", fd, exact, 1e-7 * std::abs(exact)).note =
        at_note + ", five-point difference with h = t/1000";
  }
  {
    const auto fb = evaluate(p, t_id, quad);
    const double lhs = fb.k_prime - t_id / (tau - 2.0) * fb.k_double_prime;
    b.equal("identity.homogeneous_prime", lhs, homogeneous::k_h_prime(q, t_id),
            1e-10)
        .note = at_note;
    const double lhs0 =
        (tau - 1.0) / (tau - 2.0) * fb.k - t_id / (tau - 2.0) * fb.k_prime;
    b.equal("identity.homogeneous_value", lhs0, homogeneous::k_h(q, t_id), 1e-10)
        .note = at_note + "; derived form without an additive t/(tau-2)^2 term";
  }

  // F0 envelope 1 - q/(e^t+q-1) < F0(t) < 1 at the solved points.
  {
    double worst_lo = std::numeric_limits<double>::infinity(), lo_l = 0, lo_r = 0;
    double worst_hi = std::numeric_limits<double>::infinity(), hi_l = 0;
    bool ok_lo = true, ok_hi = true;
    for (double t : {s.t_c_pp, s.t_c_p, s.t_c, s.T}) {
      const double f = f0(p, t, quad);
      const double lower = -std::expm1(std::log(q) - potts::detail::log_shifted_exp(t, q));
      const double fl = 10.0 * std::numeric_limits<double>::epsilon() * f;
      ok_lo = ok_lo && f - lower > fl;
      ok_hi = ok_hi && 1.0 - f > 0.0;
      if (f - lower < worst_lo) {
        worst_lo = f - lower;
        lo_l = lower;
        lo_r = f;
      }
      if (1.0 - f < worst_hi) {
        worst_hi = 1.0 - f;
        hi_l = f;
      }
    }
    auto &c1 = b.less("envelope.f0_lower", lo_l, lo_r, 0.0);
    c1.passed = ok_lo;
    c1.note = "worst case over t in {t_c'', t_c', t_c, T}";
    auto &c2 = b.less("envelope.f0_upper", hi_l, 1.0, 0.0);
    c2.passed = ok_hi;
    c2.note = "worst case over t in {t_c'', t_c', t_c, T}";
  }
  const auto env = asymptotics::gamma_envelope(q, s.t_c);
  b.less("envelope.gamma_c_lower", env.lower, s.gamma_c, floor_for(s.t_c));
  b.less("envelope.gamma_c_upper", s.gamma_c, env.upper, floor_for(s.t_c))
      .note = "upper end t_c (1 + q/(e^t_c - 1))";

  const double res_limit = 1e-8;
  b.residual("residual.K_at_tc", s.residuals.at("K(t_c)"), res_limit);
  b.residual("residual.K1_at_tcp", s.residuals.at("K'(t_c')"), res_limit);
  b.residual("residual.K2_at_tcpp", s.residuals.at("K''(t_c'')"), res_limit);
  b.residual("residual.stationarity", s.residuals.at("stationarity"), res_limit);
  b.residual("residual.criticality", s.residuals.at("criticality"), res_limit);

  detail::psi_checks(b, q);
  detail::varphi_check(b, {std::exp(s.t_c), std::exp(s.T)});

  {
    // The Phi route is the reference; the K'' route is compared where it is
    // well conditioned.
    const auto phi_root = solvers::solve_tc_pp_phi(p, cfg).root;
    if (via_phi) {
      auto &c = b.equal("root.tcpp_phi_agreement", s.t_c_pp, phi_root,
                        1e-8 * std::max(1.0, phi_root));
      c.mandatory = false;
      c.note = "K'' closed form ill-conditioned at this scale; solved by Phi only";
    } else {
      const auto kpp_root = solvers::solve_tc_pp_kpp(p, cfg).root;
      b.equal("root.tcpp_phi_agreement", kpp_root, phi_root, 1e-8);
    }
  }
  {
    auto &c = b.less("info.newton_step_tcp_vs_root", step_closed, s.t_c_p, 0.0);
    c.note = step_closed < s.t_c_p ? "step below root" : "step above root";
    c.passed = true;
    c.mandatory = false;
  }
  if (tau == 4.0)
    b.less("bound.tcp_below_b_tau4", s.t_c_p, bq, floor_for(s.t_c_p));
  if (opt.include_conjectures) {
    Check *c;
    if (bs.tc_conjectured_lower) {
      c = &b.less("conjecture.tc_lower", *bs.tc_conjectured_lower, s.t_c, 0.0);
      if (tau <= 5.0)
        c->note = "lower bound is 0 for tau <= 5";
    } else {
      c = &b.less("conjecture.tc_lower", 0.0, s.t_c, 0.0);
      c->note = "not applicable at tau = 4";
    }
    c->mandatory = false;
  }
}
} // namespace detail

//! Reports for every (q, tau) in row-major order (q outer). Points that fail
//! parameter validation or solving are recorded, never thrown. `jobs` > 1
//! evaluates points on that many threads; the order is unaffected.
inline std::vector<VerificationReport> verify_grid(const std::vector<double> &qs,
                                                   const std::vector<double> &taus,
                                                   const VerifyOptions &opt = {},
                                                   int jobs = 1) {
  const std::size_t n = qs.size() * taus.size();
  std::vector<VerificationReport> out(n);
  auto run = [&](std::size_t i) {
    const double q = qs[i / taus.size()], tau = taus[i % taus.size()];
    if (std::isinf(tau) && tau > 0) {
      out[i] = verify_homogeneous(q, opt);
      return;
    }
    try {
      out[i] = verify(ModelParams(q, tau), opt);
    } catch (const InvalidParams &e) {
      VerificationReport r;
      r.q = q;
      r.tau = tau;
      r.status = ReportStatus::invalid_params;
      r.error = e.what();
      out[i] = std::move(r);
    } catch (const std::exception &e) {
      VerificationReport r;
      r.q = q;
      r.tau = tau;
      r.status = ReportStatus::solver_failure;
      r.error = e.what();
      r.skipped = check_names(tau, opt.include_conjectures);
      out[i] = std::move(r);
    }
  };
  parallel_for_index(n, jobs, run);
  return out;
}

} // namespace potts::verifier
