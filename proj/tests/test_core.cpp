#include "oracles.hpp"
#include "potts/core.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace potts;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const std::vector<double> kQs = {2.5, 3.0, 5.0, 20.0, 100.0};
const std::vector<double> kTaus = {4.0, 4.5, 5.0, 6.0, 11.0, 18.0};
const std::vector<double> kTs = {0.01, 0.03125, 0.2, 1.0, 3.0, 8.0};
} // namespace

TEST_CASE("ModelParams enforces q > 2 and tau >= 4", "[core]") {
  CHECK_NOTHROW(ModelParams(2.0001, 4.0));
  CHECK_THROWS_AS(ModelParams(2.0, 6.0), InvalidParams);
  CHECK_THROWS_AS(ModelParams(1.5, 6.0), InvalidParams);
  CHECK_THROWS_AS(ModelParams(3.0, 3.99), InvalidParams);
  CHECK_THROWS_AS(ModelParams(NAN, 6.0), InvalidParams);
  CHECK_THROWS_AS(ModelParams(3.0, INFINITY), InvalidParams);
  const ModelParams p(20.0, 6.0);
  CHECK_THAT(p.b(), WithinRel(std::log(19.0), 1e-15));
  CHECK_THAT(p.mean_weight(), WithinRel(5.0 / 4.0, 1e-15));
}

TEST_CASE("Pareto moments", "[core]") {
  CHECK_THAT(pareto_moment(6.0, 0), WithinRel(1.0, 1e-15));
  CHECK_THAT(pareto_moment(6.0, 1), WithinRel(5.0 / 4.0, 1e-15));
  CHECK_THAT(pareto_moment(6.0, 4), WithinRel(5.0, 1e-15));
  CHECK_THROWS_AS(pareto_moment(5.0, 4), DomainError);
  CHECK_THROWS_AS(pareto_moment(6.0, -1), DomainError);
  // mu_2 against Simpson integration of w^2 (tau-1) w^-tau; w = 1/u gives
  // (tau-1) u^(tau-4) on (0, 1].
  const double oracle_mu2 = oracle::simpson(
      [](double u) { return 6.0 * std::pow(u, 3.0); }, 0.0, 1.0, 1 << 12);
  CHECK_THAT(pareto_moment(7.0, 2), WithinRel(oracle_mu2, 1e-12));
}

TEST_CASE("D(t) agrees with the Simpson oracle", "[core]") {
  for (double q : kQs)
    for (double tau : kTaus)
      for (double t : kTs) {
        INFO("q=" << q << " tau=" << tau << " t=" << t);
        CHECK_THAT(d_integral(ModelParams(q, tau), t),
                   WithinRel(oracle::d_integral(q, tau, t), 1e-10));
      }
}

TEST_CASE("D(0) = 1/(q(tau-2)) and D is continuous across the complement switch", "[core]") {
  const ModelParams p(3.0, 4.5);
  CHECK_THAT(d_integral(p, 0.0), WithinRel(1.0 / (3.0 * 2.5), 1e-11));
  const double below = d_integral(p, std::nextafter(kDComplementBelow, 0.0));
  const double above = d_integral(p, std::nextafter(kDComplementBelow, 1.0));
  CHECK_THAT(below, WithinRel(above, 1e-11));
}

TEST_CASE("dD/dt identity matches finite differences", "[core]") {
  for (double q : {2.5, 20.0})
    for (double tau : {4.0, 6.0, 11.0})
      for (double t : {0.1, 1.0, 4.0}) {
        const ModelParams p(q, tau);
        const double fd = oracle::derivative(
            [&](double x) { return oracle::d_integral(q, tau, x, 1 << 18); }, t, t / 1000);
        INFO("q=" << q << " tau=" << tau << " t=" << t);
        CHECK_THAT(d_integral_derivative(p, t), WithinRel(fd, 1e-7));
      }
}

TEST_CASE("K agrees with its definition evaluated by oracles", "[core]") {
  for (double q : {2.5, 20.0, 100.0})
    for (double tau : {4.0, 5.0, 11.0})
      for (double t : {0.05, 0.7, 3.0}) {
        INFO("q=" << q << " tau=" << tau << " t=" << t);
        CHECK_THAT(k(ModelParams(q, tau), t), WithinAbs(oracle::k_function(q, tau, t), 1e-12));
      }
}

TEST_CASE("K' and K'' are derivatives of K and K'", "[core]") {
  for (double q : {3.0, 20.0})
    for (double tau : {4.0, 6.0, 18.0})
      for (double t : {0.3, 2.0, 5.0}) {
        const ModelParams p(q, tau);
        const double h = t / 500;
        INFO("q=" << q << " tau=" << tau << " t=" << t);
        CHECK_THAT(k_prime(p, t),
                   WithinAbs(oracle::derivative([&](double x) { return k(p, x); }, t, h), 1e-8));
        CHECK_THAT(k_double_prime(p, t),
                   WithinAbs(oracle::derivative([&](double x) { return k_prime(p, x); }, t, h), 1e-8));
        const auto fb = evaluate(p, t);
        CHECK_THAT(fb.k_triple_prime,
                   WithinAbs(oracle::derivative([&](double x) { return k_double_prime(p, x); }, t, h),
                             1e-7));
      }
}

TEST_CASE("evaluate bundles the individual functions", "[core]") {
  const ModelParams p(5.0, 4.5);
  for (double t : {0.0, 0.02, 0.5, 2.0}) {
    const auto fb = evaluate(p, t);
    CHECK_THAT(fb.k, WithinAbs(k(p, t), 1e-15));
    CHECK_THAT(fb.k_prime, WithinAbs(k_prime(p, t), 1e-15));
    CHECK_THAT(fb.f0, WithinAbs(f0(p, t), 1e-15));
    if (t > 0.0)
      CHECK_THAT(fb.k_double_prime, WithinAbs(k_double_prime(p, t), 1e-15));
    else
      CHECK(fb.k_double_prime == 0.0);
  }
}

TEST_CASE("F0 lies strictly inside (0, 1) for t > 0 and vanishes at 0", "[core]") {
  for (double q : kQs)
    for (double tau : kTaus) {
      const ModelParams p(q, tau);
      CHECK(std::abs(f0(p, 0.0)) < 1e-12);
      for (double t : kTs) {
        const double v = f0(p, t);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
      }
    }
}

TEST_CASE("Phi agrees with the Simpson oracle", "[core]") {
  for (double q : {2.5, 20.0, 1000.0})
    for (double tau : {4.0, 4.5, 6.0, 11.0})
      for (double t : {0.01, 0.5, 3.0}) {
        INFO("q=" << q << " tau=" << tau << " t=" << t);
        CHECK_THAT(phi(ModelParams(q, tau), t), WithinRel(oracle::phi(q, tau, t), 1e-9));
      }
  CHECK_THROWS_AS(phi(ModelParams(3.0, 5.0), 0.0), DomainError);
}

TEST_CASE("Phi-based forms equal the closed forms", "[core]") {
  for (double q : {2.5, 3.0, 20.0})
    for (double tau : {4.0, 5.0, 7.0})
      for (double t : {0.1, 0.8, 2.5}) {
        const ModelParams p(q, tau);
        const auto fb = evaluate(p, t);
        INFO("q=" << q << " tau=" << tau << " t=" << t);
        CHECK_THAT(k_double_prime_via_phi(p, t), WithinAbs(fb.k_double_prime, 1e-10));
        CHECK_THAT(k_prime_via_phi(p, t), WithinAbs(fb.k_prime, 1e-10));
        CHECK_THAT(k_via_phi(p, t), WithinAbs(fb.k, 1e-10));
      }
}

TEST_CASE("a(x) changes sign at ln(q-1) and matches its definition", "[core]") {
  for (double q : {2.5, 3.0, 20.0, 1e4}) {
    const double b = std::log(q - 1.0);
    CHECK(a_kernel(q, 0.5 * b) > 0.0);
    CHECK(a_kernel(q, 1.5 * b + 0.1) < 0.0);
    for (double x : {0.1, 1.0, 5.0})
      CHECK_THAT(a_kernel(q, x), WithinAbs(oracle::a_kernel(q, x), 1e-14));
  }
}

TEST_CASE("T-equation function: derivative t a(t) and agreement with the direct form", "[core]") {
  for (double q : {2.5, 3.0, 20.0})
    for (double t : {0.2, 0.9, 1.5, 4.0}) {
      const double e = std::exp(t), big_e = e + q - 1.0;
      const double direct = t * e / (big_e * big_e) + 1.0 / big_e - 1.0 / q;
      CHECK_THAT(t_equation(q, t), WithinAbs(direct, 1e-14));
      CHECK_THAT(oracle::derivative([&](double x) { return t_equation(q, x); }, t, 1e-3),
                 WithinAbs(t * a_kernel(q, t), 1e-10));
    }
}

TEST_CASE("psi matches its polynomial-log definition", "[core]") {
  for (double q : {2.5, 3.0, 20.0})
    for (double y : {1.5, 3.0, 10.0}) {
      const double direct = y * (1.0 + std::log(y)) + q - 1.0 - (y + q - 1.0) * (y + q - 1.0) / q;
      CHECK_THAT(psi(q, y), WithinAbs(direct, 1e-12 * (1 + std::abs(direct))));
    }
  CHECK_THROWS_AS(psi(3.0, 0.0), DomainError);
}

TEST_CASE("varphi is positive above 1 and vanishes at 1", "[core]") {
  CHECK(std::abs(varphi(1.0)) < 1e-15);
  for (double y = 1.01; y < 50.0; y *= 1.3)
    CHECK(varphi(y) > 0.0);
}

TEST_CASE("criticality residual vanishes at gamma = t / F0(t) exactly when K does", "[core]") {
  const ModelParams p(20.0, 6.0);
  for (double t : {1.0, 4.0}) {
    const double gamma = t / f0(p, t);
    CHECK_THAT(criticality_residual(p, t, gamma), WithinAbs(k(p, t), 1e-12));
  }
  CHECK_THROWS_AS(criticality_residual(p, 1.0, 0.0), DomainError);
}

TEST_CASE("negative t is outside the domain", "[core]") {
  const ModelParams p(3.0, 5.0);
  CHECK_THROWS_AS(d_integral(p, -0.1), DomainError);
  CHECK_THROWS_AS(k_double_prime(p, 0.0), DomainError);
  CHECK_THROWS_AS(a_kernel(3.0, -1.0), DomainError);
}
