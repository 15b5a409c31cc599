#include "oracles.hpp"
#include "potts/solvers.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace potts;
using namespace potts::solvers;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("newton_bisect finds simple roots", "[solvers]") {
  RootSolveConfig cfg;
  cfg.tol_t = 1e-14;
  const auto r = newton_bisect([](double x) { return x * x - 2.0; },
                               [](double x) { return 2.0 * x; }, {0.0, 2.0}, cfg);
  CHECK_THAT(r.root, WithinAbs(std::sqrt(2.0), 1e-14));
  CHECK(r.iterations < 20);
  CHECK(r.iterates.size() == static_cast<std::size_t>(r.iterations));
}

TEST_CASE("newton_bisect falls back to bisection when Newton leaves the bracket", "[solvers]") {
  // atan has Newton steps that overshoot far from the root.
  const auto r = newton_bisect([](double x) { return std::atan(x - 1.0); },
                               [](double x) { return 1.0 / (1.0 + (x - 1.0) * (x - 1.0)); },
                               {-20.0, 30.0}, RootSolveConfig{});
  CHECK_THAT(r.root, WithinAbs(1.0, 1e-9));
  CHECK(r.bisection_steps > 0);
}

TEST_CASE("newton_bisect reports bracket and convergence failures", "[solvers]") {
  auto f = [](double x) { return x * x + 1.0; };
  auto df = [](double x) { return 2.0 * x; };
  CHECK_THROWS_AS(newton_bisect(f, df, {-1.0, 1.0}, RootSolveConfig{}), BracketError);
  CHECK_THROWS_AS(newton_bisect(f, df, {1.0, 1.0}, RootSolveConfig{}), BracketError);
  RootSolveConfig tight;
  tight.max_iters = 2;
  tight.tol_t = 1e-15;
  CHECK_THROWS_AS(newton_bisect([](double x) { return std::cbrt(x - 0.3); },
                                [](double) { return 1e-30; }, {0.0, 1.0}, tight),
                  ConvergenceError);
}

TEST_CASE("T matches bisection on the T equation", "[solvers]") {
  for (double q : {2.5, 3.0, 20.0, 1e6}) {
    const double b = std::log(q - 1.0);
    const double ref = oracle::bisect(
        [q](double t) {
          const double e = std::exp(t), big_e = e + q - 1.0;
          return t * e / (big_e * big_e) + 1.0 / big_e - 1.0 / q;
        },
        b, 1.5 * b, 1e-15 * b);
    INFO("q=" << q);
    CHECK_THAT(solve_T(q).root, WithinRel(ref, 1e-12));
  }
  CHECK_THAT(solve_T(20.0).root, WithinAbs(4.1914, 5e-4));
  // Near q = 2 the direct form cancels; T/ln(q-1) tends to the root of the
  // leading-order series, which lies inside (1, 1.5).
  const double b = std::log(1.001);
  const double ratio = solve_T(2.001).root / b;
  CHECK(ratio > 1.0);
  CHECK(ratio < 1.5);
  CHECK(std::abs(t_equation(2.001, solve_T(2.001).root)) < 1e-15);
  CHECK_THROWS_AS(solve_T(2.0), InvalidParams);
}

TEST_CASE("t_c'' is the zero of K'' located by bisection", "[solvers]") {
  for (double q : {2.5, 20.0})
    for (double tau : {4.0, 6.0, 11.0}) {
      const ModelParams p(q, tau);
      const double ref = oracle::bisect([&](double t) { return k_double_prime(p, t); },
                                        1e-3, p.b(), 1e-13);
      INFO("q=" << q << " tau=" << tau);
      CHECK_THAT(solve_tc_pp(p).root, WithinAbs(ref, 1e-9));
    }
}

TEST_CASE("t_c' and t_c are zeros of K' and K found by bisection", "[solvers]") {
  for (double q : {3.0, 100.0})
    for (double tau : {4.5, 6.0, 18.0}) {
      const ModelParams p(q, tau);
      const auto s = critical_summary(p);
      const double tcp = oracle::bisect([&](double t) { return k_prime(p, t); },
                                        s.t_c_pp, s.T, 1e-13);
      const double tc = oracle::bisect([&](double t) { return k(p, t); },
                                       s.t_c_p, 2.0 * p.b(), 1e-13);
      INFO("q=" << q << " tau=" << tau);
      CHECK_THAT(s.t_c_p, WithinAbs(tcp, 1e-9));
      CHECK_THAT(s.t_c, WithinAbs(tc, 1e-9));
    }
}

TEST_CASE("q = 20 critical points", "[solvers]") {
  const std::pair<double, double> expected[] = {{6.0, 3.1829}, {11.0, 3.7205}, {18.0, 3.9245}};
  for (auto [tau, tcp] : expected) {
    const auto s = critical_summary(ModelParams(20.0, tau));
    CHECK_THAT(s.t_c_p, WithinAbs(tcp, 5e-4));
    CHECK_THAT(s.T, WithinAbs(4.1914, 5e-4));
    CHECK(s.t_c_pp < s.t_c_p);
    CHECK(s.t_c_p < s.t_c);
  }
}

TEST_CASE("critical_summary derives gamma_c and beta_c and small residuals", "[solvers]") {
  const ModelParams p(5.0, 6.0);
  const auto s = critical_summary(p);
  CHECK_THAT(s.gamma_c, WithinRel(s.t_c / f0(p, s.t_c), 1e-12));
  CHECK_THAT(s.beta_c, WithinRel(std::log1p(s.gamma_c), 1e-15));
  CHECK(s.t_c_pp_route == "K''");
  CHECK_FALSE(s.reduced_confidence);
  for (const auto &[name, value] : s.residuals) {
    INFO(name);
    CHECK(value < 1e-8);
  }
}

TEST_CASE("small b switches to the Phi route", "[solvers]") {
  const ModelParams p(2.01, 7.0);
  const auto r = solve_tc_pp(p);
  CHECK(r.route == "Phi");
  CHECK_THAT(r.root / ((2.0 / 3.0) * p.b()), WithinAbs(1.0, 0.15));
  CHECK(use_phi_forms(p, r.root));
  const auto s = critical_summary(p);
  CHECK(s.t_c_pp < s.t_c_p);
  CHECK(s.t_c_p < s.t_c);
  for (const auto &[name, value] : s.residuals)
    CHECK(value < 1e-8);
}

TEST_CASE("K'' and Phi routes agree where both are well conditioned", "[solvers]") {
  for (double q : {3.0, 20.0})
    for (double tau : {4.0, 5.0, 7.0}) {
      const ModelParams p(q, tau);
      INFO("q=" << q << " tau=" << tau);
      CHECK_THAT(solve_tc_pp_kpp(p).root, WithinAbs(solve_tc_pp_phi(p).root, 1e-8));
    }
}

TEST_CASE("t_c'' beyond double range at tau = 4 is reported as a stage failure", "[solvers]") {
  const ModelParams p(2.0001, 4.0);
  try {
    critical_summary(p);
    FAIL("expected StageError");
  } catch (const StageError &e) {
    CHECK(e.stage() == "t_c_pp");
  }
}

TEST_CASE("gamma envelope brackets gamma_c", "[solvers]") {
  for (double q : {3.0, 20.0, 1e4}) {
    const ModelParams p(q, 6.0);
    const auto s = critical_summary(p);
    const auto g = asymptotics::gamma_envelope(q, s.t_c);
    CHECK(g.lower < s.gamma_c);
    CHECK(s.gamma_c < g.upper);
    CHECK_THAT(asymptotics::gamma_c_approx(p).approx, WithinAbs(s.t_c, 1e-9));
  }
}

TEST_CASE("tolerance warning flags requests below quadrature resolution", "[solvers]") {
  RootSolveConfig cfg;
  CHECK_FALSE(cfg.tolerance_warning(3.0).has_value());
  cfg.tol_t = 1e-14;
  CHECK(cfg.tolerance_warning(3.0).has_value());
}
