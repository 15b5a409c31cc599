//! t_c'' as q -> 2 for several exponents, next to the leading-order laws.

#include "potts/solvers.hpp"

#include <cmath>
#include <cstdio>

int main() {
  std::printf("%6s %10s %14s %14s %8s\n", "tau", "b", "t_c''", "leading order", "ratio");
  for (double tau : {4.5, 5.0, 7.0, 11.0})
    for (double b : {0.1, 0.01, 0.001}) {
      const potts::ModelParams p(1.0 + std::exp(b), tau);
      try {
        const double root = potts::solvers::solve_tc_pp(p).root;
        const double approx = potts::asymptotics::small_b_tcpp(p).value;
        std::printf("%6g %10g %14.6e %14.6e %8.4f\n", tau, b, root, approx, root / approx);
      } catch (const std::exception &e) {
        std::printf("%6g %10g  failed: %s\n", tau, b, e.what());
      }
    }
}
