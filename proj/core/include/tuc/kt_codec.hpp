#pragma once

#include <cstdint>

#include "tuc/alphabet.hpp"
#include "tuc/bitstream.hpp"
#include "tuc/codelength.hpp"
#include "tuc/kt_model.hpp"

namespace tuc {

// Order-k Markov codec with Krichevsky-Trofimov sequential estimation.
//
// The first k symbols, which have no full context, are coded uniformly with
// probability 1/|A| each; from position k on, each symbol is coded with the
// KT estimate conditioned on the previous k symbols, and the counts are
// updated after the symbol. The ideal length is the exact sum of the
// per-symbol -log2 probabilities; encode materializes the same model through
// the range coder and stays within a few bits of the ideal.
class KtMarkovCodec {
 public:
  KtMarkovCodec(Alphabet alphabet, std::uint32_t order);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::uint32_t order() const noexcept { return order_; }

  // Exact ideal code length of x under this model, in bits.
  CodeLengthBits ideal_length(SymbolSpan x) const;

  // Lossless encoding of x. Empty input yields an empty payload.
  Bitstream encode(SymbolSpan x) const;

  // Emitted size in bits without keeping the payload.
  std::uint64_t encoded_bits(SymbolSpan x) const;

  // Exact inverse of encode for the same (alphabet, order, n).
  SymbolVec decode(const Bitstream& payload, std::uint64_t n) const;

 private:
  Alphabet alphabet_;
  std::uint32_t order_;
};

}  // namespace tuc
