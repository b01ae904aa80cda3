#include "tuc/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tuc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t argmin_smallest_index(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] < scores[best]) best = i;
  }
  return best;
}

}  // namespace

std::uint64_t prefix_length_finite(const TimeBudget& budget, std::size_t m) {
  if (m == 0) throw DomainError("candidate count must be positive");
  const double r = budget.extra() / (double(m) * budget.v());
  const double clamped = std::min(r, double(budget.n()));
  return std::uint64_t(std::floor(clamped));
}

CompressionResult select_finite(SymbolSpan x, CompressorList candidates,
                                const PriorWeights& prior,
                                const TimeBudget& budget) {
  const std::size_t m = candidates.size();
  if (m == 0) throw DomainError("selection needs at least one candidate");

  CompressionResult res;
  SelectionOutcome& out = res.outcome;
  out.scores.assign(m, 0.0);
  out.trial_prefixes.assign(m, 0);

  const std::uint64_t r = m == 1 ? 0 : prefix_length_finite(budget, m);
  if (r > 0) {
    for (std::size_t i = 0; i < m; ++i) {
      out.trial_prefixes[i] = r;
      const double penalty =
          prior.is_uniform() ? 0.0 : double(prior.penalty_bits(i + 1));
      try {
        out.scores[i] =
            penalty + double(candidates[i]->measure_bits(x.first(r)));
      } catch (const TrialError& e) {
        out.scores[i] = kInf;
        out.warnings.push_back(candidates[i]->name() +
                               " failed its trial: " + e.what());
      }
      out.trial_cost += double(r) * budget.cost_per_letter(std::uint32_t(i));
    }
    if (std::all_of(out.scores.begin(), out.scores.end(),
                    [](double s) { return s == kInf; })) {
      throw TrialError("every candidate failed its trial");
    }
  }
  const std::size_t chosen = argmin_smallest_index(out.scores);
  out.chosen = std::uint32_t(chosen);
  res.payload = candidates[chosen]->compress(x);
  out.payload_bits = res.payload.bit_count();
  out.total_cost = out.trial_cost +
                   double(x.size()) *
                       budget.cost_per_letter(std::uint32_t(chosen));
  return res;
}

PsiSchedule psi_delta_schedule(std::uint64_t t, double delta) {
  if (t == 0) throw DomainError("schedule needs t >= 1");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  PsiSchedule sched;
  sched.N = std::uint64_t(std::floor(delta * double(t)));
  if (sched.N == 0) return sched;  // no budget: trial skipped entirely
  if (sched.N >= 4) {
    const double m = std::floor(std::log2(std::log2(double(sched.N))));
    sched.m = std::uint32_t(std::max(0.0, m));
  }
  sched.s = sched.m >= 1 ? sched.N / (sched.m + 1) : sched.N;
  sched.s = std::min(sched.s, t);
  return sched;
}

CompressionResult select_countable_psi(SymbolSpan x, Alphabet alphabet,
                                       const PriorWeights& prior,
                                       const TimeBudget& budget,
                                       std::uint32_t max_order) {
  PsiSchedule sched = psi_delta_schedule(std::max<std::uint64_t>(x.size(), 1),
                                         budget.delta());
  const std::uint32_t top_order = std::min(sched.m, max_order);
  const std::uint64_t s = std::min<std::uint64_t>(sched.s, x.size());

  CompressionResult res;
  SelectionOutcome& out = res.outcome;
  if (sched.N == 0 || s == 0) {
    // Degenerate budget: fall back to the smallest-index candidate.
    out.chosen = 0;
    out.scores.assign(1, double(prior.penalty_bits(1)));
    out.trial_prefixes.assign(1, 0);
  } else {
    const std::uint32_t k = top_order + 1;  // orders 0..top_order
    out.scores.resize(k);
    out.trial_prefixes.assign(k, s);
    for (std::uint32_t i = 0; i < k; ++i) {
      KtMarkovCodec codec(alphabet, i);
      out.scores[i] = double(prior.penalty_bits(i + 1)) +
                      double(codec.encoded_bits(x.first(s)));
      out.trial_cost += double(s) * budget.cost_per_letter(i);
    }
    out.chosen = std::uint32_t(argmin_smallest_index(out.scores));
  }
  KtMarkovCodec codec(alphabet, out.chosen);
  res.payload = codec.encode(x);
  out.payload_bits = res.payload.bit_count();
  out.total_cost =
      out.trial_cost + double(x.size()) * budget.cost_per_letter(out.chosen);
  return res;
}

TrialSchedule::TrialSchedule(TauFn tau, std::size_t candidate_count,
                             double delta,
                             std::span<const std::uint64_t> checkpoints)
    : tau_(std::move(tau)), count_(candidate_count) {
  if (!tau_) throw DomainError("trial schedule needs a tau function");
  if (count_ == 0) throw DomainError("trial schedule needs candidates");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  for (std::uint64_t t : checkpoints) {
    double total = 0.0;
    for (std::size_t i = 0; i < count_; ++i) {
      const std::uint64_t tau_i = tau_(i, t);
      if (tau_i > t) {
        throw DomainError("tau exceeds the checkpoint length");
      }
      total += double(tau_i);
    }
    if (total > delta * double(t)) {
      throw DomainError("schedule exceeds the trial budget at t = " +
                        std::to_string(t));
    }
  }
}

std::uint64_t TrialSchedule::tau(std::size_t candidate, std::uint64_t t) const {
  return tau_(candidate, t);
}

std::vector<SelectionOutcome> run_schedule_engine(
    SymbolSpan x, CompressorList candidates, const PriorWeights& prior,
    const TrialSchedule& schedule,
    std::span<const std::uint64_t> checkpoints) {
  const std::size_t m = candidates.size();
  if (m == 0) throw DomainError("selection needs at least one candidate");
  if (m != schedule.candidate_count()) {
    throw DomainError("schedule built for a different candidate count");
  }

  std::vector<double> penalty(m);
  for (std::size_t i = 0; i < m; ++i) {
    penalty[i] = -std::log2(prior.weight(i + 1));
  }

  std::vector<SelectionOutcome> results;
  results.reserve(checkpoints.size());
  for (std::uint64_t t : checkpoints) {
    if (t > x.size()) {
      throw DomainError("checkpoint beyond the available sequence");
    }
    std::vector<std::uint64_t> taus(m);
    for (std::size_t i = 0; i < m; ++i) taus[i] = schedule.tau(i, t);

    // Penalized length of each candidate at every pairwise-min prefix it
    // participates in.
    std::vector<std::map<std::uint64_t, double>> at(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::uint64_t r = std::min(taus[i], taus[j]);
        at[i].emplace(r, 0.0);
      }
      for (auto& [r, bits] : at[i]) {
        bits = penalty[i] + double(candidates[i]->measure_bits(x.first(r)));
      }
    }

    const auto dominates = [&](std::size_t sidx, std::size_t i) {
      const std::uint64_t r = std::min(taus[sidx], taus[i]);
      return at[sidx].at(r) <= at[i].at(r);
    };

    std::size_t chosen = 0;
    bool found = false;
    for (std::size_t s = 0; s < m && !found; ++s) {
      bool all = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (i != s && !dominates(s, i)) {
          all = false;
          break;
        }
      }
      if (all) {
        chosen = s;
        found = true;
      }
    }
    SelectionOutcome out;
    if (!found) {
      // No pairwise dominator; take the candidate with the most wins.
      std::size_t best = 0, best_wins = 0;
      for (std::size_t s = 0; s < m; ++s) {
        std::size_t wins = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (i != s && dominates(s, i)) ++wins;
        }
        if (wins > best_wins) {
          best = s;
          best_wins = wins;
        }
      }
      chosen = best;
      out.warnings.push_back("no pairwise dominator at t = " +
                             std::to_string(t));
    }
    out.chosen = std::uint32_t(chosen);
    out.trial_prefixes = taus;
    out.scores.resize(m);
    double trial_cost = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      out.scores[i] = at[i].at(taus[i]);
      trial_cost += double(taus[i]) * candidates[i]->cost_per_letter();
    }
    out.trial_cost = trial_cost;
    out.total_cost = trial_cost;
    results.push_back(std::move(out));
  }
  return results;
}

}  // namespace tuc
