#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tuc {

// One acceptance experiment: a seeded, deterministic check of a convergence
// or exactness claim against an analytic or brute-force oracle.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic for a fixed seed base
};

struct BenchOptions {
  // Quick mode shrinks lengths and seed counts to a smoke-test subset;
  // thresholds for the full-scale claims apply only to the full run.
  bool quick = false;
  std::uint64_t seed_base = 1;
};

std::vector<CriterionResult> run_acceptance_suite(const BenchOptions& options);

}  // namespace tuc
