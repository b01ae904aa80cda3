// Acceptance suite: runs every full-scale seeded experiment and prints one
// pass/fail line per criterion. Exit status is the number of failures.

#include <cstdio>

#include "tuc/bench_suite.hpp"

int main() {
  const tuc::BenchOptions options{/*quick=*/false, /*seed_base=*/1};
  const std::vector<tuc::CriterionResult> results =
      tuc::run_acceptance_suite(options);
  int failures = 0;
  for (const tuc::CriterionResult& r : results) {
    std::printf("[%s] criterion %2d %-34s %s\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", int(results.size()) - failures,
              results.size());
  return failures;
}
