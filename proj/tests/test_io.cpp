#include "potts/io.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

using namespace potts;

TEST_CASE("format_double round-trips exactly", "[io]") {
  for (double x : {0.1, 1.0 / 3.0, 3.1829134327498507, 1e-300, 6.02e23, -2.5e-17}) {
    const auto s = io::format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(io::format_double(NAN) == "nan");
  CHECK(io::format_double(-NAN) == "nan");
  CHECK(io::format_double(INFINITY) == "inf");
  CHECK(io::format_double(-INFINITY) == "-inf");
}

TEST_CASE("CSV fields are quoted only when needed", "[io]") {
  CHECK(io::csv_field("plain") == "plain");
  CHECK(io::csv_field("a,b") == "\"a,b\"");
  CHECK(io::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(io::csv_row({"1", "2"}) == "1,2\n");
}

TEST_CASE("critical fields render nan for a missing summary", "[io]") {
  const auto f = io::critical_fields(2.0, 6.0, std::nullopt);
  REQUIRE(f.size() == 8);
  CHECK(f[0] == "2");
  CHECK(f[2] == "nan");
}

TEST_CASE("non-finite JSON numbers become strings", "[io]") {
  CHECK(io::number(1.5).is_number());
  CHECK(io::number(INFINITY) == "inf");
  CHECK(io::number(std::optional<double>{}).is_null());
}

TEST_CASE("report JSON uses the documented field names", "[io]") {
  verifier::VerificationReport r;
  r.q = 3.0;
  r.tau = INFINITY;
  r.checks.push_back({"x", verifier::CheckKind::residual, true, 1e-12, 1e-8, 1e-8, true, ""});
  r.all_passed = true;
  const auto j = io::to_json(r);
  CHECK(j["params"]["q"] == 3.0);
  CHECK(j["params"]["tau"] == "inf");
  CHECK(j["all_passed"] == true);
  const auto &c = j["checks"][0];
  for (const char *key : {"name", "kind", "passed", "lhs", "rhs", "margin", "mandatory"})
    CHECK(c.contains(key));
  CHECK(c["kind"] == "residual");
  CHECK_FALSE(c.contains("note"));
}

TEST_CASE("summary JSON carries every critical quantity", "[io]") {
  solvers::CriticalSummary s;
  s.t_c = 4.0;
  s.residuals["K(t_c)"] = 1e-12;
  const auto j = io::to_json(s, 20.0, 6.0);
  for (const char *key : {"q", "tau", "t_c_pp", "t_c_p", "t_c", "T", "gamma_c", "beta_c",
                          "residuals", "t_c_pp_route", "reduced_confidence"})
    CHECK(j.contains(key));
  CHECK(j["residuals"]["K(t_c)"] == 1e-12);
}

TEST_CASE("tau = inf bounds take the limiting coefficients", "[io]") {
  const auto b = io::bounds_at(3.0, INFINITY);
  const double l = std::log(2.0);
  CHECK(b.tc_sharp == Catch::Approx(2.0 * l));
  CHECK(*b.tc_conjectured_lower == Catch::Approx(2.0 * l));
  CHECK_THROWS_AS(io::bounds_at(2.0, INFINITY), InvalidParams);
}
