//! Critical quantities at one (q, tau), given on the command line.

#include "potts/solvers.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char **argv) {
  const double q = argc > 1 ? std::atof(argv[1]) : 20.0;
  const double tau = argc > 2 ? std::atof(argv[2]) : 6.0;
  try {
    const potts::ModelParams p(q, tau);
    const auto s = potts::solvers::critical_summary(p);
    std::printf("q = %g, tau = %g, ln(q-1) = %.6f\n", q, tau, p.b());
    std::printf("  t_c''   = %.10f  (%s route)\n", s.t_c_pp, s.t_c_pp_route.c_str());
    std::printf("  t_c'    = %.10f\n", s.t_c_p);
    std::printf("  t_c     = %.10f\n", s.t_c);
    std::printf("  T       = %.10f\n", s.T);
    std::printf("  gamma_c = %.10f\n", s.gamma_c);
    std::printf("  beta_c  = %.10f\n", s.beta_c);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
