#include "oracles.hpp"
#include "potts/asymptotics.hpp"
#include "potts/solvers.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace potts;
using namespace potts::asymptotics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("regime classification uses exact comparison", "[asymptotics]") {
  CHECK(classify_regime(4.0) == RegimeTag::TAU_EQ_4);
  CHECK(classify_regime(std::nextafter(4.0, 5.0)) == RegimeTag::TAU_IN_4_5);
  CHECK(classify_regime(5.0) == RegimeTag::TAU_EQ_5);
  CHECK(classify_regime(5.5) == RegimeTag::TAU_GT_5);
  CHECK(classify_regime(INFINITY) == RegimeTag::TAU_GT_5);
  CHECK_THROWS_AS(classify_regime(3.5), DomainError);
  CHECK(to_string(RegimeTag::TAU_IN_4_5) == "TAU_IN_4_5");
}

TEST_CASE("bound set values", "[asymptotics]") {
  const ModelParams p(20.0, 6.0);
  const double b = std::log(19.0);
  const auto s = bounds(p);
  CHECK_THAT(s.tc_simple, WithinRel(2 * b, 1e-15));
  CHECK_THAT(s.tcp_simple, WithinRel(1.5 * b, 1e-15));
  CHECK_THAT(s.tcpp_simple, WithinRel(b, 1e-15));
  CHECK_THAT(s.tc_sharp, WithinRel(1.6 * b, 1e-15));
  CHECK_THAT(*s.tc_conjectured_lower, WithinRel(b, 1e-15));
  CHECK_FALSE(bounds(ModelParams(20.0, 4.0)).tc_conjectured_lower.has_value());
  CHECK(*bounds(ModelParams(20.0, 4.5)).tc_conjectured_lower == 0.0);
}

TEST_CASE("moment sandwich needs tau > 5 for its lower member", "[asymptotics]") {
  const auto [lo5, hi5] = moment_sandwich(ModelParams(20.0, 5.0));
  CHECK_FALSE(lo5.has_value());
  CHECK_THAT(hi5, WithinRel(2.0 * 0.75 * std::log(19.0), 1e-14));
  const auto [lo6, hi6] = moment_sandwich(ModelParams(20.0, 6.0));
  CHECK(lo6.has_value());
  const auto [lo7, hi7] = moment_sandwich(ModelParams(20.0, 7.0));
  REQUIRE(lo7.has_value());
  // mu_3/mu_4 = (tau-5)/(tau-4), mu_0/mu_1 = (tau-2)/(tau-1).
  CHECK_THAT(*lo7, WithinRel(2.0 * (2.0 / 3.0) * std::log(19.0), 1e-14));
  CHECK_THAT(hi7, WithinRel(2.0 * (5.0 / 6.0) * std::log(19.0), 1e-14));
  CHECK_THAT(hi6, WithinRel(2.0 * 0.8 * std::log(19.0), 1e-14));
}

TEST_CASE("large-q limit ratios", "[asymptotics]") {
  CHECK_THAT(limit_ratios(6.0).tc, WithinRel(1.6, 1e-15));
  CHECK(limit_ratios(INFINITY).tc == 2.0);
  CHECK(limit_ratios(4.0).tcp == 1.0);
}

TEST_CASE("decay constants per regime", "[asymptotics]") {
  const auto k4 = decay_constants(4.0);
  CHECK_THAT(*k4.k1, WithinRel(8.0 * oracle::c_tau(4.0), 1e-10));
  CHECK_FALSE(k4.k2.has_value());
  const auto k45 = decay_constants(4.5);
  CHECK_THAT(*k45.k2, WithinRel(std::pow(4.0 * oracle::c_tau(4.5), -2.0), 1e-9));
  CHECK(*decay_constants(5.0).k3 == 1.0);
  CHECK_THAT(*decay_constants(7.0).k4, WithinRel(2.0 / 3.0, 1e-15));
  CHECK(*decay_constants(INFINITY).k4 == 1.0);
}

TEST_CASE("small-b approximations", "[asymptotics]") {
  CHECK_THAT(small_b_tcpp_at(7.0, 0.001).value, WithinRel(2.0 / 3.0 * 0.001, 1e-15));
  CHECK_THAT(small_b_tcpp_at(5.0, 0.01).value, WithinRel(0.01 / std::log(100.0), 1e-14));
  const double c4 = oracle::c_tau(4.0);
  CHECK_THAT(small_b_tcpp_at(4.0, 0.05).value, WithinRel(0.05 * std::exp(-8.0 * c4 / 0.05), 1e-8));
  const auto a = small_b_tcpp_at(7.0, 0.5);
  CHECK_FALSE(a.trustworthy);
  CHECK_FALSE(a.warning.empty());
  CHECK(small_b_tcpp_at(7.0, 0.05).trustworthy);
  CHECK_THROWS_AS(small_b_tcpp_at(7.0, 0.0), DomainError);
}

TEST_CASE("tau > 5 small-b law is approached by the solver", "[asymptotics]") {
  double prev = INFINITY;
  for (double q : {2.01, 2.001, 2.0001}) {
    const ModelParams p(q, 7.0);
    const double ratio = solvers::solve_tc_pp(p).root / small_b_tcpp(p).value;
    CHECK(ratio > 0.85);
    CHECK(ratio < 1.15);
    CHECK(std::abs(ratio - 1.0) < prev);
    prev = std::abs(ratio - 1.0);
  }
}

TEST_CASE("tau = 4 t_c'' is exponentially small in b", "[asymptotics]") {
  const double b = 0.2;
  const ModelParams p(1.0 + std::exp(b), 4.0);
  const double root = solvers::solve_tc_pp(p).root;
  CHECK(root > 0.0);
  CHECK(root < b * std::exp(-8.0 * quadrature::c_tau(4.0) * 0.5 / b));
}
