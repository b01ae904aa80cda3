#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tuc/errors.hpp"

namespace tuc {

// Growable bit container. Bits are MSB-first within each byte; trailing pad
// bits of the last byte are always zero.
class Bitstream {
 public:
  Bitstream() = default;

  // Adopts whole bytes (bit count = 8 * bytes).
  static Bitstream from_bytes(std::vector<std::uint8_t> bytes) {
    Bitstream b;
    b.bit_count_ = 8 * std::uint64_t(bytes.size());
    b.bytes_ = std::move(bytes);
    return b;
  }

  void push_bit(bool bit) {
    const unsigned off = unsigned(bit_count_ & 7);
    if (off == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= std::uint8_t(0x80u >> off);
    ++bit_count_;
  }

  // Appends the low `width` bits of `value`, most significant first.
  void push_bits(std::uint64_t value, unsigned width) {
    if (width > 64) throw DomainError("bit field wider than 64");
    for (unsigned i = width; i-- > 0;) {
      push_bit((value >> i) & 1u);
    }
  }

  void append(const Bitstream& other) {
    for (std::uint64_t i = 0; i < other.bit_count_; ++i) {
      push_bit(other.bit_at(i));
    }
  }

  bool bit_at(std::uint64_t i) const {
    if (i >= bit_count_) throw DomainError("bit index out of range");
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }

  std::uint64_t bit_count() const noexcept { return bit_count_; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

  friend bool operator==(const Bitstream&, const Bitstream&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_count_ = 0;
};

// Strict MSB-first reader over a byte span. Reading past the declared bit
// count throws DecodeError(Truncated).
class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_count)
      : bytes_(bytes), bit_count_(bit_count) {
    if (bit_count > 8 * std::uint64_t(bytes.size())) {
      throw DecodeError(DecodeError::Kind::Truncated,
                        "declared bit count exceeds available bytes");
    }
  }

  explicit BitReader(const Bitstream& b)
      : BitReader(b.bytes(), b.bit_count()) {}

  bool read_bit() {
    if (pos_ >= bit_count_) {
      throw DecodeError(DecodeError::Kind::Truncated, "bitstream exhausted");
    }
    const bool bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return bit;
  }

  std::uint64_t read_bits(unsigned width) {
    if (width > 64) throw DomainError("bit field wider than 64");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
      v = (v << 1) | std::uint64_t(read_bit());
    }
    return v;
  }

  std::uint64_t position() const noexcept { return pos_; }
  std::uint64_t remaining() const noexcept { return bit_count_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t bit_count_;
  std::uint64_t pos_ = 0;
};

}  // namespace tuc
