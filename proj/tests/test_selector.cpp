#include <doctest.h>

#include <cmath>

#include "tuc/selector.hpp"
#include "tuc/source_sim.hpp"

using namespace tuc;

namespace {

class FailingCompressor final : public Compressor {
 public:
  std::string name() const override { return "failing"; }
  std::uint64_t measure_bits(SymbolSpan) override {
    throw TrialError("always fails");
  }
  Bitstream compress(SymbolSpan) override { throw TrialError("always fails"); }
};

}  // namespace

TEST_CASE("finite trial prefix") {
  CHECK(prefix_length_finite(TimeBudget(1000, 0.1, 1.0), 1) == 100);
  CHECK(prefix_length_finite(TimeBudget(1000, 0.1, 1.0), 4) == 25);
  CHECK(prefix_length_finite(TimeBudget(1000, 0.0001, 1.0), 2) == 0);
  // Never beyond the sequence itself.
  CHECK(prefix_length_finite(TimeBudget(10, 50.0, 1.0), 2) == 10);
  CHECK_THROWS_AS(TimeBudget(1000, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(TimeBudget(1000, -0.5, 1.0), DomainError);
  CHECK_THROWS_AS(prefix_length_finite(TimeBudget(8, 0.1, 1.0), 0),
                  DomainError);
}

TEST_CASE("budget registers measured costs only below the bound") {
  TimeBudget budget(100, 0.1, 2.0);
  budget.set_measured_cost(0, 1.5);
  CHECK(budget.cost_per_letter(0) == 1.5);
  CHECK(budget.cost_per_letter(1) == 2.0);
  CHECK_THROWS_AS(budget.set_measured_cost(1, 2.5), DomainError);
}

TEST_CASE("singleton family compresses without a trial") {
  const SymbolVec x = generate(bernoulli_source(0.4, 3), 500);
  MarkovCompressor only(Alphabet(2), 0);
  Compressor* cands[] = {&only};
  const CompressionResult res =
      select_finite(x, cands, PriorWeights::uniform_over(1),
                    TimeBudget(x.size(), 0.1));
  CHECK(res.outcome.chosen == 0);
  CHECK(res.outcome.trial_prefixes == std::vector<std::uint64_t>{0});
  CHECK(res.outcome.trial_cost == 0.0);
  CHECK(res.payload.bit_count() == *res.outcome.payload_bits);
  const KtMarkovCodec codec(Alphabet(2), 0);
  CHECK(codec.decode(res.payload, x.size()) == x);
}

TEST_CASE("equal scores break toward the smallest index") {
  const SymbolVec x = generate(bernoulli_source(0.5, 9), 400);
  MarkovCompressor a(Alphabet(2), 1), b(Alphabet(2), 1);
  Compressor* cands[] = {&a, &b};
  const CompressionResult res = select_finite(
      x, cands, PriorWeights::uniform_over(2), TimeBudget(x.size(), 0.2));
  CHECK(res.outcome.scores[0] == res.outcome.scores[1]);
  CHECK(res.outcome.chosen == 0);
}

TEST_CASE("chosen is the argmin of the recorded scores") {
  SplitMix64 rng(808);
  for (int c = 0; c < 10; ++c) {
    const SymbolVec x = generate(flip_chain_source(0.15, rng.next()), 3000);
    MarkovCompressor p0(Alphabet(2), 0), p1(Alphabet(2), 1), p2(Alphabet(2), 2);
    Compressor* cands[] = {&p0, &p1, &p2};
    const CompressionResult res = select_finite(
        x, cands, PriorWeights::zeta(), TimeBudget(x.size(), 0.3));
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.outcome.scores.size(); ++i) {
      if (res.outcome.scores[i] < res.outcome.scores[best]) best = i;
    }
    CHECK(res.outcome.chosen == best);
  }
}

TEST_CASE("trial cost respects the extra budget") {
  const SymbolVec x = generate(bernoulli_source(0.5, 5), 10000);
  MarkovCompressor p0(Alphabet(2), 0), p1(Alphabet(2), 1), p2(Alphabet(2), 2);
  Compressor* cands[] = {&p0, &p1, &p2};
  const TimeBudget budget(x.size(), 0.07);
  const CompressionResult res =
      select_finite(x, cands, PriorWeights::uniform_over(3), budget);
  CHECK(res.outcome.trial_cost <= budget.extra() + 1e-9);
  CHECK(res.outcome.total_cost <= budget.cap() + budget.v() + 1e-9);
}

TEST_CASE("failing candidates are excluded, all failing is an error") {
  const SymbolVec x = generate(bernoulli_source(0.5, 6), 256);
  FailingCompressor bad;
  MarkovCompressor good(Alphabet(2), 0);
  {
    Compressor* cands[] = {&bad, &good};
    const CompressionResult res = select_finite(
        x, cands, PriorWeights::uniform_over(2), TimeBudget(x.size(), 0.5));
    CHECK(res.outcome.chosen == 1);
    CHECK(res.outcome.scores[0] ==
          std::numeric_limits<double>::infinity());
    CHECK(res.outcome.warnings.size() == 1);
  }
  {
    FailingCompressor bad2;
    Compressor* cands[] = {&bad, &bad2};
    CHECK_THROWS_AS(select_finite(x, cands, PriorWeights::uniform_over(2),
                                  TimeBudget(x.size(), 0.5)),
                    TrialError);
  }
  CHECK_THROWS_AS(select_finite(x, {}, PriorWeights::zeta(),
                                TimeBudget(x.size(), 0.5)),
                  DomainError);
}

TEST_CASE("psi-delta schedule on hand-evaluated points") {
  {
    const PsiSchedule s = psi_delta_schedule(1000000, 1.0);
    CHECK(s.N == 1000000);
    CHECK(s.m == 4);
    CHECK(s.s == 200000);
  }
  {
    // N = 3 < 4: only order 0 is trialed, on all N letters.
    const PsiSchedule s = psi_delta_schedule(30, 0.1);
    CHECK(s.N == 3);
    CHECK(s.m == 0);
    CHECK(s.s == 3);
  }
  {
    // delta t < 1: no trial at all.
    const PsiSchedule s = psi_delta_schedule(9, 0.1);
    CHECK(s.N == 0);
    CHECK(s.s == 0);
  }
  {
    // s is clamped to the sequence length.
    const PsiSchedule s = psi_delta_schedule(10, 3.0);
    CHECK(s.N == 30);
    CHECK(s.m == 2);
    CHECK(s.s == 10);
  }
  CHECK_THROWS_AS(psi_delta_schedule(0, 0.1), DomainError);
}

TEST_CASE("countable selection on a degenerate budget picks order zero") {
  const SymbolVec x = generate(bernoulli_source(0.5, 2), 9);
  const CompressionResult res = select_countable_psi(
      x, Alphabet(2), PriorWeights::zeta(), TimeBudget(x.size(), 0.1));
  CHECK(res.outcome.chosen == 0);
  CHECK(res.outcome.trial_cost == 0.0);
  const KtMarkovCodec codec(Alphabet(2), 0);
  CHECK(codec.decode(res.payload, x.size()) == x);
}

TEST_CASE("countable selection prefers order zero on uniform noise") {
  int zero = 0;
  const int seeds = 100;
  for (int s = 1; s <= seeds; ++s) {
    const SymbolVec x = generate(bernoulli_source(0.5, s), 1 << 16);
    const CompressionResult res = select_countable_psi(
        x, Alphabet(2), PriorWeights::zeta(), TimeBudget(x.size(), 0.25));
    if (res.outcome.chosen == 0) ++zero;
  }
  CHECK(zero >= 95);
}

TEST_CASE("countable selection budget and mixture dominance") {
  const SymbolVec x = generate(flip_chain_source(0.1, 77), 1 << 16);
  const TimeBudget budget(x.size(), 0.25);
  const CompressionResult res = select_countable_psi(
      x, Alphabet(2), PriorWeights::zeta(), budget);
  std::uint64_t trial_letters = 0;
  for (std::uint64_t r : res.outcome.trial_prefixes) trial_letters += r;
  CHECK(double(trial_letters) <= budget.extra());
  CHECK(res.outcome.total_cost <= budget.cap() + budget.v());
  // The mixture over the trialed lengths is at least as short as every
  // penalized candidate.
  std::vector<double> lengths;
  for (std::size_t i = 0; i < res.outcome.scores.size(); ++i) {
    lengths.push_back(res.outcome.scores[i] -
                      double(PriorWeights::zeta().penalty_bits(i + 1)));
  }
  const double mix = mixture_code_length(lengths, PriorWeights::zeta());
  double best = std::numeric_limits<double>::infinity();
  for (double sc : res.outcome.scores) best = std::min(best, sc);
  CHECK(mix <= best + 1e-9);
}

TEST_CASE("max-order cap limits the countable family") {
  const SymbolVec x = generate(flip_chain_source(0.1, 5), 1 << 16);
  const CompressionResult res = select_countable_psi(
      x, Alphabet(2), PriorWeights::zeta(), TimeBudget(x.size(), 0.25), 1);
  CHECK(res.outcome.scores.size() == 2);  // orders 0 and 1 only
}

TEST_CASE("schedule construction validates the budget") {
  const std::vector<std::uint64_t> checkpoints = {1024, 2048};
  CHECK_THROWS_AS(TrialSchedule([](std::size_t, std::uint64_t t) { return t; },
                                2, 0.1, checkpoints),
                  DomainError);
  CHECK_THROWS_AS(
      TrialSchedule([](std::size_t, std::uint64_t t) { return t + 1; }, 1, 2.0,
                    checkpoints),
      DomainError);
  // A feasible schedule passes.
  TrialSchedule ok(
      [](std::size_t, std::uint64_t t) { return t / 20; }, 2, 0.1, checkpoints);
  CHECK(ok.tau(0, 2048) == 102);
}

TEST_CASE("engine with a single constant-schedule candidate") {
  const SymbolVec x = generate(bernoulli_source(0.5, 4), 2048);
  MarkovCompressor only(Alphabet(2), 0);
  Compressor* cands[] = {&only};
  const std::vector<std::uint64_t> checkpoints = {512, 1024, 2048};
  TrialSchedule schedule(
      [](std::size_t, std::uint64_t t) { return t / 2; }, 1, 0.5, checkpoints);
  const auto outs = run_schedule_engine(x, cands, PriorWeights::zeta(),
                                        schedule, checkpoints);
  REQUIRE(outs.size() == 3);
  for (const SelectionOutcome& o : outs) CHECK(o.chosen == 0);
}

TEST_CASE("engine stabilizes on the scripted limit-optimal candidate") {
  const SymbolVec x(1 << 16, 0);
  std::vector<std::uint64_t> checkpoints;
  for (std::uint64_t t = 1 << 10; t <= x.size(); t <<= 1) {
    checkpoints.push_back(t);
  }
  int stable = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScriptedCompressor slow(1, 0.9, 1.0, seed);
    ScriptedCompressor fast(2, 0.5, 1.0, seed);
    Compressor* cands[] = {&slow, &fast};
    TrialSchedule schedule(
        [](std::size_t, std::uint64_t t) {
          return std::uint64_t(0.1 * double(t) / 2.0);
        },
        2, 0.1, checkpoints);
    const auto outs = run_schedule_engine(x, cands, PriorWeights::zeta(),
                                          schedule, checkpoints);
    bool all = true;
    for (std::size_t c = 0; c < outs.size(); ++c) {
      if (checkpoints[c] >= (1 << 13) && outs[c].chosen != 1) all = false;
    }
    stable += all;
  }
  CHECK(stable == 10);
}

TEST_CASE("engine rejects checkpoints beyond the sequence") {
  const SymbolVec x(100, 0);
  MarkovCompressor only(Alphabet(2), 0);
  Compressor* cands[] = {&only};
  const std::vector<std::uint64_t> checkpoints = {512};
  TrialSchedule schedule(
      [](std::size_t, std::uint64_t t) { return t / 4; }, 1, 0.5, checkpoints);
  CHECK_THROWS_AS(run_schedule_engine(x, cands, PriorWeights::zeta(), schedule,
                                      checkpoints),
                  DomainError);
}

TEST_CASE("scripted lengths converge to the designed limit") {
  ScriptedCompressor s(1, 0.7, 1.0, 42);
  for (std::uint64_t r : {1000ull, 10000ull, 100000ull}) {
    const double per_letter = double(s.scripted_bits(r)) / double(r);
    CHECK(std::abs(per_letter - 0.7) <= 1.0 / std::sqrt(double(r)) + 1e-9);
  }
  CHECK(s.scripted_bits(0) == 0);
}
