#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tuc/alphabet.hpp"
#include "tuc/codelength.hpp"
#include "tuc/kt_model.hpp"

namespace tuc {

// Next-symbol distribution. Laplace and KT estimates are rational-valued;
// the exact numerators over the common denominator are carried alongside the
// doubles (numerator[a] / denominator sums to exactly 1 over the alphabet).
struct Forecast {
  std::vector<double> p;
  std::vector<std::uint64_t> numerator;
  std::uint64_t denominator = 0;
};

struct PredictorId {
  enum class Family { Laplace, KtMarkov };

  Family family = Family::Laplace;
  std::uint32_t order = 0;  // KtMarkov only

  static PredictorId laplace() { return {Family::Laplace, 0}; }
  static PredictorId kt(std::uint32_t order) {
    return {Family::KtMarkov, order};
  }

  std::string name() const {
    return family == Family::Laplace ? "laplace"
                                     : "kt" + std::to_string(order);
  }

  friend bool operator==(const PredictorId&, const PredictorId&) = default;
};

// Laplace estimate L0(a | x) = (nu(a) + 1) / (t + |A|).
Forecast laplace_predict(SymbolSpan x, Alphabet alphabet);

// Forecast for the symbol following x under the given predictor.
Forecast predict_next(PredictorId id, SymbolSpan x, Alphabet alphabet);

// log2 of the sequence probability prod_t pi(x_t | x_1..x_{t-1}),
// accumulated in the log domain. Nonpositive; 0 for the empty sequence.
double sequence_log2_prob(PredictorId id, SymbolSpan x, Alphabet alphabet);

// Incremental single-predictor state: O(k) work per consumed symbol for an
// order-k KT predictor, O(1) for Laplace.
class OnlinePredictor {
 public:
  OnlinePredictor(PredictorId id, Alphabet alphabet);

  // Probability the current state assigns to `a` as the next symbol.
  double prob(Symbol a) const;

  // Full next-symbol forecast (built on demand).
  Forecast forecast() const;

  // Scores x against the current forecast, then updates the state.
  // Returns -log2 p(x).
  double consume(Symbol x);

  double cumulative_log_loss() const noexcept { return loss_; }
  std::uint64_t position() const noexcept { return t_; }
  PredictorId id() const noexcept { return id_; }

 private:
  PredictorId id_;
  Alphabet alphabet_;
  double loss_ = 0.0;
  std::uint64_t t_ = 0;
  // Laplace state.
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  // KT state.
  std::optional<ContextCounts> kt_;
  std::optional<ContextWindow> window_;
};

// Time-adaptive predictor over a finite candidate list: every candidate is
// updated on every symbol (stored state makes the trials free), forecasts
// come from the active candidate, and the active candidate is re-selected
// at checkpoints by maximizing w(i+1) * pi_i(x_1..x_t) in the log domain.
// Default checkpoints are the powers of two.
class AdaptiveOnlinePredictor {
 public:
  AdaptiveOnlinePredictor(const std::vector<PredictorId>& candidates,
                          PriorWeights prior, Alphabet alphabet);

  double consume(Symbol x);
  Forecast forecast() const { return candidates_[active_].forecast(); }

  std::size_t active() const noexcept { return active_; }
  double cumulative_log_loss() const noexcept { return loss_; }
  std::uint64_t position() const noexcept { return t_; }

  // Penalized candidate scores -log2 w(i+1) + loss_i at the current state.
  std::vector<double> scores() const;

  // Forces a re-selection now (normally driven by the checkpoint schedule).
  void reselect();

 private:
  std::vector<OnlinePredictor> candidates_;
  PriorWeights prior_;
  std::size_t active_ = 0;
  double loss_ = 0.0;
  std::uint64_t t_ = 0;
  std::uint64_t next_checkpoint_ = 1;
};

struct PredictorSelection {
  PredictorId chosen;
  std::size_t chosen_pos = 0;
  Forecast forecast;           // chosen predictor on the full history
  std::vector<double> scores;  // -log2 w(i+1) - log2 pi_i(x_1..x_r)
};

// Trial-prefix selection: chooses argmax_i w(i+1) pi_i(x_1..x_r), ties to
// the smallest index, then forecasts with the winner on all of x.
PredictorSelection select_predictor(SymbolSpan x, std::uint64_t r,
                                    std::span<const PredictorId> candidates,
                                    const PriorWeights& prior,
                                    Alphabet alphabet);

}  // namespace tuc
