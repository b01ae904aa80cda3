#pragma once

#include <cstdint>
#include <vector>

#include "tuc/alphabet.hpp"
#include "tuc/errors.hpp"

namespace tuc {

// SplitMix64: fixed 64-bit counter-based generator, bit-identical across
// platforms, so seeded fixtures are portable.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
};

// Order-k Markov source with everywhere-positive transition rows, so the
// chain is ergodic and entropy rates are well defined.
//
// Contexts are indexed densely in base |A|: the context (c_1 ... c_k) with
// c_k the most recent symbol has index sum c_i * |A|^(k-i).
struct MarkovSourceSpec {
  Alphabet alphabet;
  std::uint32_t order = 0;
  // One row per context, |A|^order rows of |A| positive entries summing to 1.
  std::vector<std::vector<double>> transitions;
  // Distribution over initial contexts; empty means the stationary one.
  std::vector<double> initial;
  std::uint64_t seed = 1;
};

struct EntropyReport {
  std::vector<double> h;  // h[r] for r = 0..R, bits per letter
  double h_inf = 0.0;     // limit entropy rate, bits per letter
};

// Validates rows (positivity, normalization) and dimensions.
// Throws DomainError on one-hot or otherwise degenerate rows.
void validate_source(const MarkovSourceSpec& spec);

// Deterministic given (spec, seed). The first k symbols are the initial
// context, sampled from `initial` (or the stationary distribution).
SymbolVec generate(const MarkovSourceSpec& spec, std::uint64_t n);

// Stationary distribution of the context chain, by power iteration to a
// 1e-13 L1 residual.
std::vector<double> stationary_distribution(const MarkovSourceSpec& spec);

// h_r for r = 0..R and the limit rate. h_r for r >= order equals h_inf.
EntropyReport entropy_rate(const MarkovSourceSpec& spec, std::uint32_t R);

// Canned sources used throughout tests and benchmarks.
MarkovSourceSpec bernoulli_source(double p1, std::uint64_t seed);
// Binary order-1 chain with P(flip) = q from either state.
MarkovSourceSpec flip_chain_source(double q, std::uint64_t seed);
// Binary order-2 "noisy parity": next = x(t-1) xor x(t-2), flipped w.p. q.
// Orders 0 and 1 see a fair coin; h_2 = H(q).
MarkovSourceSpec noisy_parity_source(double q, std::uint64_t seed);
// Seeded random rows, each entry floored away from zero.
MarkovSourceSpec random_source(Alphabet alphabet, std::uint32_t order,
                               std::uint64_t seed);

}  // namespace tuc
