#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "tuc/errors.hpp"

namespace tuc {

// 64-bit integer range coder with byte-wise renormalization and MSB-first
// output. Carries are resolved through a cache byte plus a run of pending
// 0xFF bytes, so emitted bytes are never rewritten. Frequencies are exact
// 32-bit integers; every symbol must have freq >= 1 so no symbol gets zero
// mass.
//
// finish() emits the shortest byte string whose zero-extension selects a
// value inside the final interval, which keeps the total output within a few
// bits of the ideal code length.
class RangeEncoder {
 public:
  static constexpr std::uint64_t kBot = std::uint64_t(1) << 56;
  static constexpr std::uint64_t kMaxTotal = std::uint64_t(1) << 32;

  explicit RangeEncoder(std::vector<std::uint8_t>& out) : out_(&out) {}

  void encode(std::uint32_t cum, std::uint32_t freq, std::uint64_t total) {
    assert(total >= 1 && total <= kMaxTotal);
    assert(freq >= 1 && cum + std::uint64_t(freq) <= total);
    const std::uint64_t r = range_ / total;
    low_ += static_cast<unsigned __int128>(r) * cum;
    range_ = r * freq;
    while (range_ < kBot) {
      shift_low();
      range_ <<= 8;
    }
  }

  // Terminates the stream. No further encode() calls are allowed.
  void finish() {
    const unsigned s = std::bit_width(range_) >= 2
                           ? unsigned(std::bit_width(range_) - 2)
                           : 0u;
    // Round low up to a multiple of 2^s; since 2^s <= range/2 the result
    // stays inside [low, low + range). A carry pending in bit 64 is kept
    // and resolved by shift_low below.
    const unsigned __int128 step = static_cast<unsigned __int128>(1) << s;
    low_ = (low_ + step - 1) & ~(step - 1);
    const std::uint64_t vlo = static_cast<std::uint64_t>(low_);
    const int tz = vlo == 0 ? 64 : std::countr_zero(vlo);
    int shifts = (64 - tz + 7) / 8;
    if ((low_ >> 64) != 0 && shifts == 0) shifts = 1;
    for (int i = 0; i < shifts; ++i) shift_low();
    if (cache_size_ > 0) {
      out_->push_back(cache_);
      for (std::uint64_t i = 1; i < cache_size_; ++i) out_->push_back(0xFF);
    }
  }

 private:
  void shift_low() {
    const std::uint64_t lo = static_cast<std::uint64_t>(low_);
    const unsigned carry = static_cast<unsigned>(low_ >> 64);
    // A 0xFF byte may only be deferred behind an existing cache byte; the
    // very first byte always becomes the cache (no carry can precede it).
    if (carry != 0 || lo < 0xFF00000000000000ull || cache_size_ == 0) {
      assert(cache_size_ > 0 || carry == 0);
      if (cache_size_ > 0) {
        out_->push_back(std::uint8_t(cache_ + carry));
        for (std::uint64_t i = 1; i < cache_size_; ++i) {
          out_->push_back(std::uint8_t(0xFF + carry));
        }
      }
      cache_ = std::uint8_t(lo >> 56);
      cache_size_ = 0;
    }
    ++cache_size_;
    low_ = static_cast<unsigned __int128>((lo & 0x00FFFFFFFFFFFFFFull) << 8);
  }

  std::vector<std::uint8_t>* out_;
  unsigned __int128 low_ = 0;  // bits [0,64]; bit 64 is an unresolved carry
  std::uint64_t range_ = ~std::uint64_t{0};
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 0;  // cache byte + pending 0xFF run
};

// Decoder counterpart. Reads past the end of the payload are zero-extended,
// matching the trimmed termination; more than kMaxOverrun such reads cannot
// occur for a well-formed stream and raise a truncation error.
class RangeDecoder {
 public:
  static constexpr std::uint64_t kBot = RangeEncoder::kBot;
  static constexpr std::size_t kMaxOverrun = 8;

  explicit RangeDecoder(std::span<const std::uint8_t> payload)
      : data_(payload) {
    for (int i = 0; i < 8; ++i) code_ = (code_ << 8) | next_byte();
  }

  // Scaled value used to locate the next symbol in the cumulative table.
  // Guaranteed < total for any stream produced by RangeEncoder.
  std::uint64_t decode_target(std::uint64_t total) {
    r_ = range_ / total;
    const std::uint64_t target = code_ / r_;
    if (target >= total) {
      throw DecodeError(DecodeError::Kind::Corrupt,
                        "range decoder target outside model");
    }
    return target;
  }

  // Commits the symbol located from the last decode_target call.
  void consume(std::uint32_t cum, std::uint32_t freq) {
    code_ -= r_ * cum;
    range_ = r_ * freq;
    while (range_ < kBot) {
      code_ = (code_ << 8) | next_byte();
      range_ <<= 8;
    }
  }

  std::size_t bytes_consumed() const noexcept { return pos_; }

 private:
  std::uint64_t next_byte() {
    if (pos_ < data_.size()) return data_[pos_++];
    if (++overrun_ > kMaxOverrun) {
      throw DecodeError(DecodeError::Kind::Truncated,
                        "range decoder ran past the payload");
    }
    ++pos_;
    return 0;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  std::size_t overrun_ = 0;
  std::uint64_t range_ = ~std::uint64_t{0};
  std::uint64_t code_ = 0;
  std::uint64_t r_ = 1;
};

}  // namespace tuc
