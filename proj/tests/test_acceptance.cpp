// Acceptance gate: twelve end-to-end checks, one line of verdict each.
// The checks live in wg/verify.hpp; this binary streams their verdicts and
// exits with the number of failures.

#include "wg/verify.hpp"

#include <cstdio>
#include <sstream>
#include <string>

int main() {
  int failures = 0;
  auto print = [&](const wg::CriterionResult& r) {
    if (!r.passed()) ++failures;
    std::printf("criterion %2d: %s  %s  (%.2f s, budget %.0f s)\n", r.id,
                r.passed() ? "PASS" : "FAIL", r.label.c_str(), r.seconds, r.budget_s);
    if (!r.in_budget) std::printf("    over time budget\n");
    std::istringstream lines(r.detail);
    std::string line;
    while (std::getline(lines, line))
      if (!line.empty()) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
  };
  wg::acceptance_suite(print);
  std::printf(failures == 0 ? "all criteria passed\n" : "%d criteria failed\n", failures);
  return failures;
}
