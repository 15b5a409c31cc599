#pragma once

// Command-line front end. run() takes its streams as arguments so the whole
// program can be driven in-process.

#include "potts/asymptotics.hpp"
#include "potts/homogeneous.hpp"
#include "potts/io.hpp"
#include "potts/parallel.hpp"
#include "potts/solvers.hpp"
#include "potts/verifier.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace potts::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kSolverFailure = 3,
  kOutputError = 4,
};

//! Bad flag values; reported with exit code 2.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

//! Whole-string decimal parse; "inf" and "infinity" are accepted, "nan" is not.
inline double parse_real(const std::string &text, const std::string &flag) {
  const char *s = text.c_str();
  char *end = nullptr;
  errno = 0;
  const double v = std::strtod(s, &end);
  if (text.empty() || end != s + text.size() || std::isnan(v) ||
      (errno == ERANGE && std::isfinite(v) && v != 0.0))
    throw UsageError(flag + ": not a number: '" + text + "'");
  return v;
}

//! Quadrature settings, with rel_tol taken from POTTS_QUAD_RTOL when set.
inline QuadratureSettings quad_settings() {
  QuadratureSettings q;
  if (const char *v = std::getenv("POTTS_QUAD_RTOL")) {
    const double r = parse_real(v, "POTTS_QUAD_RTOL");
    if (!(r > 0.0 && r < 1.0))
      throw UsageError("POTTS_QUAD_RTOL must lie in (0, 1)");
    q.rel_tol = r;
  }
  return q;
}

struct SolveFlags {
  double tol = solvers::RootSolveConfig{}.tol_t;

  solvers::RootSolveConfig config() const {
    if (!(tol > 0.0) || !std::isfinite(tol))
      throw UsageError("--tol must be positive");
    solvers::RootSolveConfig cfg;
    cfg.tol_t = tol;
    cfg.quad = quad_settings();
    return cfg;
  }
};

//! Either a single value or min/max/steps, linear or geometric.
struct Axis {
  explicit Axis(std::string n) : name(std::move(n)) {}

  std::string name;
  std::string value;
  std::optional<double> min, max;
  int steps = 1;
  bool geometric = false;

  bool is_point() const { return !value.empty(); }

  std::vector<double> values() const {
    if (is_point())
      return {parse_real(value, "--" + name)};
    if (!min)
      throw UsageError("give --" + name + " or --" + name + "-min/--" + name +
                       "-max");
    const double lo = *min, hi = max.value_or(lo);
    if (steps < 1)
      throw UsageError("--" + name + "-steps must be >= 1");
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw UsageError("--" + name + "-min/--" + name + "-max must be finite");
    if (steps > 1 && !(hi >= lo))
      throw UsageError("--" + name + "-max must not be below --" + name + "-min");
    if (geometric && !(lo > 0.0))
      throw UsageError("geometric spacing needs --" + name + "-min > 0");
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
      const double f = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
      out[i] = geometric ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
    }
    if (steps > 1)
      out.back() = hi;
    return out;
  }

  void attach(CLI::App &cmd, const std::string &what) {
    auto *point = cmd.add_option("--" + name, value, "single " + what);
    auto *lo = cmd.add_option("--" + name + "-min", min, "smallest " + what);
    cmd.add_option("--" + name + "-max", max, "largest " + what);
    cmd.add_option("--" + name + "-steps", steps, "number of " + what + " values")
        ->capture_default_str();
    point->excludes(lo);
  }
};

//! Writes `text` to `out`, or to the file `path` when one is given.
inline int emit(const std::string &text, const std::string &path,
                std::ostream &out, std::ostream &err) {
  if (path.empty()) {
    out << text << std::flush;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (f)
    f << text << std::flush;
  if (!f) {
    err << "error: cannot write " << path << '\n';
    return kOutputError;
  }
  return kOk;
}

inline bool is_homogeneous(double tau) { return std::isinf(tau) && tau > 0; }

inline solvers::CriticalSummary solve_point(double q, double tau,
                                            const solvers::RootSolveConfig &cfg) {
  if (is_homogeneous(tau))
    return solvers::homogeneous_summary(q, cfg);
  return solvers::critical_summary(ModelParams(q, tau), cfg);
}

inline int check_jobs(int jobs) {
  if (jobs < 1)
    throw UsageError("--jobs must be >= 1");
  return jobs;
}

// critical ----------------------------------------------------------------

struct CriticalArgs {
  double q = 0.0;
  std::string tau;
  std::string format = "json";
  SolveFlags solve;
};

inline int cmd_critical(const CriticalArgs &a, std::ostream &out, std::ostream &err) {
  const double tau = parse_real(a.tau, "--tau");
  const auto cfg = a.solve.config();
  solvers::CriticalSummary s;
  try {
    s = solve_point(a.q, tau, cfg);
  } catch (const InvalidParams &) {
    throw;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  if (s.reduced_confidence)
    err << "warning: t_c'' from the " << s.t_c_pp_route
        << " route carries reduced confidence\n";
  std::string text;
  if (a.format == "csv")
    text = std::string(io::kCriticalHeader) + '\n' +
           io::csv_row(io::critical_fields(a.q, tau, s));
  else
    text = io::to_json(s, a.q, tau).dump(2) + '\n';
  return emit(text, "", out, err);
}

// scan --------------------------------------------------------------------

struct GridArgs {
  Axis q{"q"}, tau{"tau"};
  bool log_q = false;
  int jobs = 1;
  SolveFlags solve;

  void attach(CLI::App &cmd) {
    q.attach(cmd, "q");
    tau.attach(cmd, "tau");
    cmd.add_flag("--log-q", log_q, "geometric spacing in q");
    cmd.add_option("--jobs", jobs, "worker threads")->capture_default_str();
    cmd.add_option("--tol", solve.tol, "absolute root tolerance")
        ->capture_default_str();
  }

  std::vector<double> qs() {
    q.geometric = log_q;
    return q.values();
  }
};

struct ScanArgs {
  GridArgs grid;
  std::string out_path;
};

inline int cmd_scan(ScanArgs &a, std::ostream &out, std::ostream &err) {
  const auto qs = a.grid.qs();
  const auto taus = a.grid.tau.values();
  const auto cfg = a.grid.solve.config();
  const int jobs = check_jobs(a.grid.jobs);

  const std::size_t n = qs.size() * taus.size();
  std::vector<std::string> rows(n);
  std::vector<char> failed(n, 0);
  parallel_for_index(n, jobs, [&](std::size_t i) {
    const double q = qs[i / taus.size()], tau = taus[i % taus.size()];
    std::optional<solvers::CriticalSummary> s;
    std::optional<asymptotics::BoundSet> b;
    std::string note;
    try {
      b = io::bounds_at(q, tau);
      s = solve_point(q, tau, cfg);
      if (s->reduced_confidence)
        note = "reduced confidence: t_c'' from the " + s->t_c_pp_route + " route";
    } catch (const InvalidParams &e) {
      note = std::string("invalid params: ") + e.what();
      failed[i] = 1;
    } catch (const std::exception &e) {
      note = std::string("solver failure: ") + e.what();
      failed[i] = 1;
    }
    auto fields = io::critical_fields(q, tau, s);
    for (auto &f : io::bound_fields(b))
      fields.push_back(std::move(f));
    fields.push_back(io::csv_field(note));
    rows[i] = io::csv_row(fields);
  });

  std::string text = std::string(io::kCriticalHeader) + ',' +
                     std::string(io::kBoundHeader) + ",note\n";
  for (const auto &r : rows)
    text += r;
  const auto bad = std::count(failed.begin(), failed.end(), 1);
  if (bad)
    err << "warning: " << bad << " of " << n << " points failed; see the note column\n";
  return emit(text, a.out_path, out, err);
}

// verify ------------------------------------------------------------------

struct VerifyArgs {
  GridArgs grid;
  bool strict = false;
  bool no_conjectures = false;
};

inline int cmd_verify(VerifyArgs &a, std::ostream &out, std::ostream &err) {
  const auto qs = a.grid.qs();
  const auto taus = a.grid.tau.values();
  verifier::VerifyOptions opt;
  opt.solve = a.grid.solve.config();
  opt.include_conjectures = !a.no_conjectures;
  const auto reports =
      verifier::verify_grid(qs, taus, opt, check_jobs(a.grid.jobs));

  bool invalid = false, solver = false, failed = false;
  for (const auto &r : reports) {
    switch (r.status) {
    case verifier::ReportStatus::invalid_params:
      invalid = true;
      err << "error: q=" << io::format_double(r.q)
          << " tau=" << io::format_double(r.tau) << ": " << r.error << '\n';
      break;
    case verifier::ReportStatus::solver_failure:
      solver = true;
      err << "error: q=" << io::format_double(r.q)
          << " tau=" << io::format_double(r.tau) << ": " << r.error << '\n';
      break;
    case verifier::ReportStatus::ok:
      if (!(a.strict ? r.all_passed_strict() : r.all_passed)) {
        failed = true;
        for (const auto &c : r.checks)
          if (!c.passed && (c.mandatory || a.strict))
            err << "FAIL q=" << io::format_double(r.q)
                << " tau=" << io::format_double(r.tau) << ' ' << c.name << '\n';
      }
      break;
    }
  }

  io::Json doc;
  if (a.grid.q.is_point() && a.grid.tau.is_point()) {
    doc = io::to_json(reports.front());
  } else {
    doc = io::Json::array();
    for (const auto &r : reports)
      doc.push_back(io::to_json(r));
  }
  if (const int rc = emit(doc.dump(2) + '\n', "", out, err); rc != kOk)
    return rc;
  if (invalid)
    return kInvalidInput;
  if (solver)
    return kSolverFailure;
  return failed ? kCheckFailed : kOk;
}

// trace -------------------------------------------------------------------

struct TraceArgs {
  double q = 0.0;
  std::string tau;
  double t_min = 0.0, t_max = 0.0;
  int points = 0;
  bool skip_singular = false;
  std::string out_path;
};

inline int cmd_trace(const TraceArgs &a, std::ostream &out, std::ostream &err) {
  const double tau = parse_real(a.tau, "--tau");
  if (a.points < 1)
    throw UsageError("--points must be >= 1");
  if (!std::isfinite(a.t_min) || !std::isfinite(a.t_max) || a.t_max < a.t_min)
    throw UsageError("need finite --t-min <= --t-max");
  if (a.t_min < 0.0)
    throw UsageError("--t-min must be >= 0");
  if (a.t_min <= 0.0 && !a.skip_singular)
    throw UsageError("K2 and Phi are singular at t <= 0; raise --t-min or pass "
                     "--skip-singular");

  const auto quad = quad_settings();
  const bool homog = is_homogeneous(tau);
  if (homog && (!(a.q > 2.0) || !std::isfinite(a.q)))
    throw InvalidParams("q must be finite and > 2");
  const std::optional<ModelParams> p =
      homog ? std::nullopt : std::optional<ModelParams>(ModelParams(a.q, tau));

  std::string text = "t,K,K1,K2,F0,Phi\n";
  try {
    for (int i = 0; i < a.points; ++i) {
      const double t =
          a.points == 1 ? a.t_min
                        : (i == a.points - 1
                               ? a.t_max
                               : a.t_min + (a.t_max - a.t_min) * i / (a.points - 1));
      std::vector<std::string> f{io::format_double(t)};
      if (homog) {
        f.push_back(io::format_double(homogeneous::k_h(a.q, t)));
        f.push_back(io::format_double(homogeneous::k_h_prime(a.q, t)));
        f.push_back(io::format_double(homogeneous::k_h_double_prime(a.q, t)));
        f.push_back(io::format_double(homogeneous::f0_h(a.q, t)));
        f.emplace_back();
      } else if (t <= 0.0) {
        const auto fb = evaluate(*p, t, quad);
        f.push_back(io::format_double(fb.k));
        f.push_back(io::format_double(fb.k_prime));
        f.emplace_back();
        f.push_back(io::format_double(fb.f0));
        f.emplace_back();
      } else {
        const auto kv = verifier::detail::k_values(
            *p, t, quad, solvers::use_phi_forms(*p, t));
        f.push_back(io::format_double(kv.k));
        f.push_back(io::format_double(kv.k1));
        f.push_back(io::format_double(kv.k2));
        f.push_back(io::format_double(f0(*p, t, quad)));
        f.push_back(io::format_double(phi(*p, t, quad)));
      }
      text += io::csv_row(f);
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return emit(text, a.out_path, out, err);
}

// asymptotic --------------------------------------------------------------

struct AsymptoticArgs {
  std::string tau;
  std::optional<double> q, b;
  std::string format = "json";
};

inline int cmd_asymptotic(const AsymptoticArgs &a, std::ostream &out,
                          std::ostream &err) {
  const double tau = parse_real(a.tau, "--tau");
  if (!(tau >= 4.0))
    throw UsageError("--tau must be >= 4");
  if (a.q.has_value() == a.b.has_value())
    throw UsageError("give exactly one of --q and --b");
  if (a.q && !(*a.q > 2.0 && std::isfinite(*a.q)))
    throw UsageError("--q must be finite and > 2");
  const double b = a.b ? *a.b : std::log(*a.q - 1.0);
  if (!(b > 0.0) || !std::isfinite(b))
    throw UsageError("--b must be finite and > 0");
  const double q = a.q ? *a.q : 1.0 + std::exp(b);

  const auto quad = quad_settings();
  asymptotics::SmallBApprox approx;
  asymptotics::DecayConstants k;
  try {
    approx = asymptotics::small_b_tcpp_at(tau, b, quad);
    k = asymptotics::decay_constants(tau, quad);
  } catch (const QuadratureError &e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  const auto ratios = asymptotics::limit_ratios(tau);
  if (!approx.warning.empty())
    err << "warning: " << approx.warning << '\n';

  std::string text;
  if (a.format == "csv") {
    auto opt = [](const std::optional<double> &x) {
      return io::format_double(x.value_or(std::nan("")));
    };
    text = "tau,q,b,regime,K1,K2,K3,K4,C_tau,t_c_pp_approx\n" +
           io::csv_row({io::format_double(tau), io::format_double(q),
                        io::format_double(b),
                        std::string(asymptotics::to_string(approx.regime)),
                        opt(k.k1), opt(k.k2), opt(k.k3), opt(k.k4), opt(k.c_tau),
                        io::format_double(approx.value)});
  } else {
    io::Json j;
    j["tau"] = io::number(tau);
    j["q"] = io::number(q);
    j["b"] = io::number(b);
    j["regime"] = std::string(asymptotics::to_string(approx.regime));
    io::Json c = io::Json::object();
    if (k.k1)
      c["K1"] = *k.k1;
    if (k.k2)
      c["K2"] = *k.k2;
    if (k.k3)
      c["K3"] = *k.k3;
    if (k.k4)
      c["K4"] = *k.k4;
    j["constants"] = c;
    if (k.c_tau)
      j["C_tau"] = *k.c_tau;
    j["t_c_pp_approx"] = io::number(approx.value);
    j["trustworthy"] = approx.trustworthy;
    if (!approx.warning.empty())
      j["warning"] = approx.warning;
    j["limit_ratios"] = {{"t_c", ratios.tc}, {"t_c_p", ratios.tcp},
                         {"t_c_pp", ratios.tcpp}};
    text = j.dump(2) + '\n';
  }
  return emit(text, "", out, err);
}

// entry point -------------------------------------------------------------

inline int run(int argc, const char *const *argv, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Critical points of the annealed Potts model on rank-1 random "
               "graphs with Pareto vertex weights"};
  app.name("potts");
  app.require_subcommand(1);

  CriticalArgs crit;
  auto *c = app.add_subcommand("critical", "t_c'', t_c', t_c, T, gamma_c, beta_c at one point");
  c->add_option("--q", crit.q, "number of Potts states (> 2)")->required();
  c->add_option("--tau", crit.tau, "Pareto exponent (>= 4, or inf)")->required();
  c->add_option("--format", crit.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  c->add_option("--tol", crit.solve.tol, "absolute root tolerance")
      ->capture_default_str();

  ScanArgs scan;
  auto *s = app.add_subcommand("scan", "critical quantities and bounds over a grid (CSV)");
  scan.grid.attach(*s);
  s->add_option("--out", scan.out_path, "write CSV to this file");

  VerifyArgs ver;
  auto *v = app.add_subcommand("verify", "check every bound and identity (JSON)");
  ver.grid.attach(*v);
  v->add_flag("--strict", ver.strict, "non-mandatory checks also decide the exit code");
  v->add_flag("--no-conjectures", ver.no_conjectures, "omit the conjectured bound");

  TraceArgs tr;
  auto *t = app.add_subcommand("trace", "K, K', K'', F0, Phi sampled on a t grid (CSV)");
  t->add_option("--q", tr.q, "number of Potts states (> 2)")->required();
  t->add_option("--tau", tr.tau, "Pareto exponent (>= 4, or inf)")->required();
  t->add_option("--t-min", tr.t_min, "first t")->required();
  t->add_option("--t-max", tr.t_max, "last t")->required();
  t->add_option("--points", tr.points, "number of samples")->required();
  t->add_flag("--skip-singular", tr.skip_singular,
              "allow t = 0 and leave K2 and Phi empty there");
  t->add_option("--out", tr.out_path, "write CSV to this file");

  AsymptoticArgs as;
  auto *a = app.add_subcommand("asymptotic", "leading-order t_c'' as ln(q-1) -> 0");
  a->add_option("--tau", as.tau, "Pareto exponent (>= 4, or inf)")->required();
  auto *aq = a->add_option("--q", as.q, "number of Potts states (> 2)");
  auto *ab = a->add_option("--b", as.b, "ln(q-1) (> 0)");
  aq->excludes(ab);
  a->add_option("--format", as.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalidInput;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  try {
    if (*c)
      return cmd_critical(crit, out, err);
    if (*s)
      return cmd_scan(scan, out, err);
    if (*v)
      return cmd_verify(ver, out, err);
    if (*t)
      return cmd_trace(tr, out, err);
    return cmd_asymptotic(as, out, err);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const InvalidParams &e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

} // namespace potts::cli
