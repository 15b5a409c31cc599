#pragma once

// JSON and CSV rendering of summaries, bounds and verification reports.
// CSV numbers use 17 significant digits so that re-parsing is exact.

#include "potts/asymptotics.hpp"
#include "potts/solvers.hpp"
#include "potts/verifier.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace potts::io {

using Json = nlohmann::ordered_json;

//! %.17g, with "inf", "-inf" and "nan" for the non-finite values.
inline std::string format_double(double x) {
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

//! JSON has no non-finite numbers; those become the strings of format_double.
inline Json number(double x) {
  if (std::isfinite(x))
    return x;
  return format_double(x);
}

inline Json number(const std::optional<double> &x) {
  return x ? number(*x) : Json(nullptr);
}

//! RFC 4180 quoting: fields containing a comma, quote or newline are wrapped
//! in quotes with inner quotes doubled.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string csv_row(const std::vector<std::string> &fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i)
      line += ',';
    line += fields[i];
  }
  return line + '\n';
}

inline constexpr std::string_view kCriticalHeader =
    "q,tau,t_c_pp,t_c_p,t_c,T,gamma_c,beta_c";

//! The eight cmd_critical fields; nullopt renders every value as nan.
inline std::vector<std::string>
critical_fields(double q, double tau,
                const std::optional<solvers::CriticalSummary> &s) {
  const double nan = std::nan("");
  auto v = [&](double solvers::CriticalSummary::*m) {
    return format_double(s ? (*s).*m : nan);
  };
  return {format_double(q),
          format_double(tau),
          v(&solvers::CriticalSummary::t_c_pp),
          v(&solvers::CriticalSummary::t_c_p),
          v(&solvers::CriticalSummary::t_c),
          v(&solvers::CriticalSummary::T),
          v(&solvers::CriticalSummary::gamma_c),
          v(&solvers::CriticalSummary::beta_c)};
}

inline Json to_json(const solvers::CriticalSummary &s, double q, double tau) {
  Json j;
  j["q"] = number(q);
  j["tau"] = number(tau);
  j["t_c_pp"] = number(s.t_c_pp);
  j["t_c_p"] = number(s.t_c_p);
  j["t_c"] = number(s.t_c);
  j["T"] = number(s.T);
  j["gamma_c"] = number(s.gamma_c);
  j["beta_c"] = number(s.beta_c);
  Json r = Json::object();
  for (const auto &[name, value] : s.residuals)
    r[name] = number(value);
  j["residuals"] = r;
  j["t_c_pp_route"] = s.t_c_pp_route;
  j["reduced_confidence"] = s.reduced_confidence;
  return j;
}

//! Bound values for the scan columns. tau = inf takes the tau -> inf limit
//! of each coefficient.
inline asymptotics::BoundSet bounds_at(double q, double tau) {
  if (!std::isinf(tau))
    return asymptotics::bounds(ModelParams(q, tau));
  if (!(q > 2.0) || !std::isfinite(q))
    throw InvalidParams("q must be finite and > 2");
  const double b = std::log(q - 1.0);
  asymptotics::BoundSet out;
  out.tc_simple = out.tc_sharp = 2.0 * b;
  out.tcp_simple = 1.5 * b;
  out.tcpp_simple = b;
  out.tc_conjectured_lower = 2.0 * b;
  out.T_bound_pair = {b, 1.5 * b};
  return out;
}

inline constexpr std::string_view kBoundHeader =
    "tc_simple,tcp_simple,tcpp_simple,tc_sharp,tc_conjectured_lower,T_lower,"
    "T_upper";

inline std::vector<std::string>
bound_fields(const std::optional<asymptotics::BoundSet> &b) {
  if (!b)
    return std::vector<std::string>(7, "nan");
  return {format_double(b->tc_simple),
          format_double(b->tcp_simple),
          format_double(b->tcpp_simple),
          format_double(b->tc_sharp),
          format_double(b->tc_conjectured_lower.value_or(std::nan(""))),
          format_double(b->T_bound_pair.first),
          format_double(b->T_bound_pair.second)};
}

inline Json to_json(const verifier::Check &c) {
  Json j;
  j["name"] = c.name;
  j["kind"] = std::string(verifier::to_string(c.kind));
  j["passed"] = c.passed;
  j["lhs"] = number(c.lhs);
  j["rhs"] = number(c.rhs);
  j["margin"] = number(c.margin);
  j["mandatory"] = c.mandatory;
  if (!c.note.empty())
    j["note"] = c.note;
  return j;
}

inline Json to_json(const verifier::VerificationReport &r) {
  Json j;
  j["params"] = {{"q", number(r.q)}, {"tau", number(r.tau)}};
  j["status"] = std::string(verifier::to_string(r.status));
  Json checks = Json::array();
  for (const auto &c : r.checks)
    checks.push_back(to_json(c));
  j["checks"] = checks;
  j["all_passed"] = r.all_passed;
  j["all_passed_strict"] = r.all_passed_strict();
  if (!r.failed_stage.empty())
    j["failed_stage"] = r.failed_stage;
  if (!r.error.empty())
    j["error"] = r.error;
  if (!r.skipped.empty())
    j["skipped"] = r.skipped;
  if (r.summary)
    j["summary"] = to_json(*r.summary, r.q, r.tau);
  return j;
}

} // namespace potts::io
