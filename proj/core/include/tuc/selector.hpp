#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tuc/budget.hpp"
#include "tuc/codelength.hpp"
#include "tuc/compressor.hpp"

namespace tuc {

// Result of one selection round. `scores` holds the penalized trial bits per
// candidate (+inf for candidates that failed their trial); `chosen` is the
// exact argmin with ties broken toward the smallest index.
struct SelectionOutcome {
  std::uint32_t chosen = 0;
  std::vector<std::uint64_t> trial_prefixes;  // letters trialed per candidate
  std::vector<double> scores;
  double trial_cost = 0.0;  // cost units, deterministic model
  double total_cost = 0.0;  // trial + full-pass cost
  std::optional<std::uint64_t> payload_bits;
  std::vector<std::string> warnings;
};

struct CompressionResult {
  SelectionOutcome outcome;
  Bitstream payload;
};

using CompressorList = std::span<Compressor* const>;

// Trial prefix for the finite-family method: floor(delta T / (m v)), so that
// trialing all m candidates costs at most delta T in the cost model.
std::uint64_t prefix_length_finite(const TimeBudget& budget, std::size_t m);

// Finite-family selection: trial every candidate on x[1..r], score with the
// index penalty (omitted under a uniform prior, where it is a constant),
// compress the full x with the winner only.
CompressionResult select_finite(SymbolSpan x, CompressorList candidates,
                                const PriorWeights& prior,
                                const TimeBudget& budget);

// Trial schedule of the countable built-in method for a length-t input:
// N = floor(delta t) trial letters, orders 0..m with m = floor(log2 log2 N)
// (0 when N < 4), each trialed on a prefix of s = floor(N / (m+1)) letters.
struct PsiSchedule {
  std::uint64_t N = 0;
  std::uint32_t m = 0;
  std::uint64_t s = 0;
};

PsiSchedule psi_delta_schedule(std::uint64_t t, double delta);

// Countable-family selection over the built-in Markov codecs psi_0, psi_1,
// ... following the psi-delta schedule; the chosen order's penalty uses
// w(j+1), matching the container's index field.
CompressionResult select_countable_psi(SymbolSpan x, Alphabet alphabet,
                                       const PriorWeights& prior,
                                       const TimeBudget& budget,
                                       std::uint32_t max_order =
                                           kMaxMarkovOrder);

// Trial schedule tau_i(t) for the generic engine. Budget feasibility
// (sum_i tau_i(t) <= delta t at every supplied checkpoint) is validated at
// construction.
class TrialSchedule {
 public:
  using TauFn =
      std::function<std::uint64_t(std::size_t candidate, std::uint64_t t)>;

  TrialSchedule(TauFn tau, std::size_t candidate_count, double delta,
                std::span<const std::uint64_t> checkpoints);

  std::uint64_t tau(std::size_t candidate, std::uint64_t t) const;
  std::size_t candidate_count() const noexcept { return count_; }

 private:
  TauFn tau_;
  std::size_t count_;
};

// Generic engine: at each checkpoint t it selects the candidate s satisfying
// the pairwise rule — for every i, with r = min(tau_i(t), tau_s(t)),
//
//   -log2 w(s+1) + |phi_s(x_1..x_r)|  <=  -log2 w(i+1) + |phi_i(x_1..x_r)|.
//
// If no candidate dominates every pairwise comparison (possible for
// heterogeneous schedules), the candidate with the most pairwise wins is
// used, ties toward the smallest index. Returns one outcome per checkpoint;
// no full-file compression is performed.
std::vector<SelectionOutcome> run_schedule_engine(
    SymbolSpan x, CompressorList candidates, const PriorWeights& prior,
    const TrialSchedule& schedule, std::span<const std::uint64_t> checkpoints);

}  // namespace tuc
