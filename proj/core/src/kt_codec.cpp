#include "tuc/kt_codec.hpp"

#include <cmath>

#include "tuc/range_coder.hpp"

namespace tuc {

namespace {

// Symbol frequency in the quantized coder model: 2 nu + 1, total 2 N + |A|.
// Every symbol keeps at least one quantum of mass.
struct CoderFreq {
  std::uint32_t cum;
  std::uint32_t freq;
  std::uint64_t total;
};

CoderFreq kt_freq(const ContextCounts::Row* row, std::uint32_t alphabet_size,
                  Symbol a) {
  std::uint64_t cum = 0;
  std::uint64_t nu = 0;
  std::uint64_t total = 0;
  if (row != nullptr) {
    for (Symbol b = 0; b < a; ++b) cum += row->counts[b];
    nu = row->counts[a];
    total = row->total;
  }
  return CoderFreq{std::uint32_t(2 * cum + a), std::uint32_t(2 * nu + 1),
                   2 * total + alphabet_size};
}

}  // namespace

KtMarkovCodec::KtMarkovCodec(Alphabet alphabet, std::uint32_t order)
    : alphabet_(alphabet), order_(order) {
  if (order > kMaxMarkovOrder) {
    throw DomainError("markov order exceeds cap of " +
                      std::to_string(kMaxMarkovOrder));
  }
}

CodeLengthBits KtMarkovCodec::ideal_length(SymbolSpan x) const {
  alphabet_.validate(x);
  ContextCounts counts(alphabet_, order_);
  ContextWindow window(order_);
  const double uniform_bits = std::log2(double(alphabet_.size()));
  double bits = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const Symbol a = x[t];
    if (t < order_) {
      bits += uniform_bits;
    } else {
      bits -= std::log2(counts.conditional_prob(window.key(), a));
      counts.add(window.key(), a);
    }
    window.push(a);
  }
  return CodeLengthBits{bits, std::uint64_t(std::ceil(bits))};
}

Bitstream KtMarkovCodec::encode(SymbolSpan x) const {
  alphabet_.validate(x);
  if (x.size() >= (std::uint64_t(1) << 31)) {
    throw DomainError("sequence too long for exact coder frequencies");
  }
  std::vector<std::uint8_t> out;
  out.reserve(x.size() / 4 + 16);
  RangeEncoder rc(out);
  ContextCounts counts(alphabet_, order_);
  ContextWindow window(order_);
  const std::uint32_t asize = alphabet_.size();
  for (std::size_t t = 0; t < x.size(); ++t) {
    const Symbol a = x[t];
    if (t < order_) {
      rc.encode(a, 1, asize);
    } else {
      ContextCounts::Row& row = counts.row(window.key());
      const CoderFreq f = kt_freq(&row, asize, a);
      rc.encode(f.cum, f.freq, f.total);
      ++row.counts[a];
      ++row.total;
    }
    window.push(a);
  }
  rc.finish();
  return Bitstream::from_bytes(std::move(out));
}

std::uint64_t KtMarkovCodec::encoded_bits(SymbolSpan x) const {
  return encode(x).bit_count();
}

SymbolVec KtMarkovCodec::decode(const Bitstream& payload,
                                std::uint64_t n) const {
  SymbolVec out;
  if (n == 0) return out;
  if (n >= (std::uint64_t(1) << 31)) {
    throw DomainError("sequence too long for exact coder frequencies");
  }
  out.reserve(n);
  RangeDecoder rc({payload.bytes().data(), payload.bytes().size()});
  ContextCounts counts(alphabet_, order_);
  ContextWindow window(order_);
  const std::uint32_t asize = alphabet_.size();
  for (std::uint64_t t = 0; t < n; ++t) {
    Symbol a = 0;
    if (t < order_) {
      a = Symbol(rc.decode_target(asize));
      rc.consume(a, 1);
    } else {
      ContextCounts::Row& row = counts.row(window.key());
      const std::uint64_t total = 2 * row.total + asize;
      const std::uint64_t target = rc.decode_target(total);
      // Walk the cumulative table: symbol b covers
      // [2 cum(b) + b, 2 cum(b) + b + 2 nu(b) + 1).
      std::uint64_t cum = 0;
      Symbol b = 0;
      for (;; ++b) {
        const std::uint64_t hi = 2 * (cum + row.counts[b]) + b + 1;
        if (target < hi || b + 1u == asize) break;
        cum += row.counts[b];
      }
      a = b;
      rc.consume(std::uint32_t(2 * cum + a), std::uint32_t(2 * row.counts[a] + 1));
      ++row.counts[a];
      ++row.total;
    }
    out.push_back(a);
    window.push(a);
  }
  // A well-formed payload never has bytes the decoder did not reach.
  if (rc.bytes_consumed() < payload.bytes().size()) {
    throw DecodeError(DecodeError::Kind::Corrupt,
                      "payload has unread trailing bytes");
  }
  return out;
}

}  // namespace tuc
