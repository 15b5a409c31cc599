//! Runs the full check battery at one point and lists every record.

#include "potts/verifier.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char **argv) {
  const double q = argc > 1 ? std::atof(argv[1]) : 20.0;
  const double tau = argc > 2 ? std::atof(argv[2]) : 11.0;
  const auto r = potts::verifier::verify_grid({q}, {tau}).front();
  if (r.status != potts::verifier::ReportStatus::ok) {
    std::fprintf(stderr, "%s: %s\n", std::string(to_string(r.status)).c_str(), r.error.c_str());
    return 1;
  }
  for (const auto &c : r.checks)
    std::printf("%-4s %-34s lhs=% .6e rhs=% .6e %s%s\n", c.passed ? "ok" : "FAIL",
                c.name.c_str(), c.lhs, c.rhs, c.mandatory ? "" : "[info] ", c.note.c_str());
  std::printf("all mandatory checks passed: %s\n", r.all_passed ? "yes" : "no");
  return r.all_passed ? 0 : 1;
}
