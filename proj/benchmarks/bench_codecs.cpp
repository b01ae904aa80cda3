#include <benchmark/benchmark.h>

#include "tuc/kt_codec.hpp"
#include "tuc/predictors.hpp"
#include "tuc/selector.hpp"
#include "tuc/source_sim.hpp"

namespace {

using namespace tuc;

SymbolVec sample_input(std::uint32_t asize, std::uint64_t n) {
  if (asize == 2) return generate(flip_chain_source(0.1, 7), n);
  SymbolVec x(n);
  SplitMix64 rng(7);
  for (Symbol& s : x) s = Symbol(rng.next() % asize);
  return x;
}

void BM_IdealLength(benchmark::State& state) {
  const std::uint32_t order = std::uint32_t(state.range(0));
  const std::uint32_t asize = std::uint32_t(state.range(1));
  const SymbolVec x = sample_input(asize, 1 << 16);
  const KtMarkovCodec codec(Alphabet(asize), order);
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec.ideal_length(x).ideal);
  }
  state.SetBytesProcessed(std::int64_t(state.iterations()) * x.size());
}
BENCHMARK(BM_IdealLength)->Args({0, 2})->Args({2, 2})->Args({0, 256});

void BM_Encode(benchmark::State& state) {
  const std::uint32_t order = std::uint32_t(state.range(0));
  const SymbolVec x = sample_input(2, 1 << 16);
  const KtMarkovCodec codec(Alphabet(2), order);
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec.encode(x).bit_count());
  }
  state.SetBytesProcessed(std::int64_t(state.iterations()) * x.size());
}
BENCHMARK(BM_Encode)->Arg(0)->Arg(2);

void BM_Decode(benchmark::State& state) {
  const SymbolVec x = sample_input(2, 1 << 16);
  const KtMarkovCodec codec(Alphabet(2), 1);
  const Bitstream payload = codec.encode(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec.decode(payload, x.size()).size());
  }
  state.SetBytesProcessed(std::int64_t(state.iterations()) * x.size());
}
BENCHMARK(BM_Decode);

void BM_SelectCountable(benchmark::State& state) {
  const SymbolVec x = sample_input(2, 1 << 16);
  const TimeBudget budget(x.size(), 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        select_countable_psi(x, Alphabet(2), PriorWeights::zeta(), budget)
            .outcome.chosen);
  }
  state.SetBytesProcessed(std::int64_t(state.iterations()) * x.size());
}
BENCHMARK(BM_SelectCountable);

void BM_AdaptivePredictor(benchmark::State& state) {
  const SymbolVec x = sample_input(2, 1 << 15);
  std::vector<PredictorId> family = {PredictorId::laplace()};
  for (std::uint32_t k = 0; k <= 4; ++k) family.push_back(PredictorId::kt(k));
  for (auto _ : state) {
    AdaptiveOnlinePredictor pred(family, PriorWeights::zeta(), Alphabet(2));
    for (Symbol s : x) pred.consume(s);
    benchmark::DoNotOptimize(pred.cumulative_log_loss());
  }
  state.SetBytesProcessed(std::int64_t(state.iterations()) * x.size());
}
BENCHMARK(BM_AdaptivePredictor);

void BM_MixtureLength(benchmark::State& state) {
  std::vector<double> lengths(16);
  SplitMix64 rng(3);
  for (double& l : lengths) l = 64.0 * rng.uniform01();
  const PriorWeights prior = PriorWeights::zeta();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixture_code_length(lengths, prior));
  }
}
BENCHMARK(BM_MixtureLength);

}  // namespace

BENCHMARK_MAIN();
