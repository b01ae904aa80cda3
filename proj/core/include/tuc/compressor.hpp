#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "tuc/alphabet.hpp"
#include "tuc/bitstream.hpp"
#include "tuc/kt_codec.hpp"
#include "tuc/source_sim.hpp"

namespace tuc {

// A selection candidate: something that can report the size of its encoding
// of a prefix (the trial) and produce the real encoding of the full input.
class Compressor {
 public:
  virtual ~Compressor() = default;

  virtual std::string name() const = 0;

  // |phi(prefix)| in bits. Throws TrialError if this candidate cannot
  // complete the trial (selection excludes it for the round).
  virtual std::uint64_t measure_bits(SymbolSpan prefix) = 0;

  virtual Bitstream compress(SymbolSpan full) = 0;

  // Per-letter cost in the deterministic cost model, in the same units as
  // the budget's bound v.
  virtual double cost_per_letter() const { return 1.0; }
};

// Built-in order-k Markov codec as a candidate.
class MarkovCompressor final : public Compressor {
 public:
  MarkovCompressor(Alphabet alphabet, std::uint32_t order)
      : codec_(alphabet, order) {}

  std::string name() const override {
    return "psi" + std::to_string(codec_.order());
  }

  std::uint64_t measure_bits(SymbolSpan prefix) override {
    return codec_.encoded_bits(prefix);
  }

  Bitstream compress(SymbolSpan full) override { return codec_.encode(full); }

  const KtMarkovCodec& codec() const noexcept { return codec_; }

 private:
  KtMarkovCodec codec_;
};

// Synthetic measure-only candidate with a designed per-letter limit:
//
//   |phi(x_1..x_r)| = round(rate * r + amplitude * sqrt(r) * u(r))
//
// where u(r) is a seeded hash of (id, r) in [-1, 1]. The per-letter length
// converges to `rate` with an O(r^-1/2) perturbation, so schedule-engine
// experiments know the argmin by construction. compress() is not supported.
class ScriptedCompressor final : public Compressor {
 public:
  ScriptedCompressor(std::uint32_t id, double rate, double amplitude,
                     std::uint64_t seed)
      : id_(id), rate_(rate), amplitude_(amplitude), seed_(seed) {}

  std::string name() const override {
    return "scripted" + std::to_string(id_);
  }

  std::uint64_t measure_bits(SymbolSpan prefix) override {
    return scripted_bits(prefix.size());
  }

  std::uint64_t scripted_bits(std::uint64_t r) const {
    if (r == 0) return 0;
    SplitMix64 rng(seed_ ^ (std::uint64_t(id_) << 32) ^ (r * 0x9E3779B9ull));
    const double u = 2.0 * rng.uniform01() - 1.0;
    const double bits =
        rate_ * double(r) + amplitude_ * std::sqrt(double(r)) * u;
    return bits <= 0.0 ? 0 : std::uint64_t(std::llround(bits));
  }

  Bitstream compress(SymbolSpan) override {
    throw Error("scripted compressors are measure-only");
  }

  double per_letter_limit() const noexcept { return rate_; }

 private:
  std::uint32_t id_;
  double rate_;
  double amplitude_;
  std::uint64_t seed_;
};

}  // namespace tuc
