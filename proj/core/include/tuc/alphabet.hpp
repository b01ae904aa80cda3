#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tuc/errors.hpp"

namespace tuc {

using Symbol = std::uint8_t;
using SymbolSpan = std::span<const Symbol>;
using SymbolVec = std::vector<Symbol>;

// Finite alphabet of byte-mapped symbols 0..size-1.
class Alphabet {
 public:
  static constexpr std::uint32_t kMinSize = 2;
  static constexpr std::uint32_t kMaxSize = 256;

  explicit Alphabet(std::uint32_t size) : size_(size) {
    if (size < kMinSize || size > kMaxSize) {
      throw DomainError("alphabet size must be in [2, 256], got " +
                        std::to_string(size));
    }
  }

  std::uint32_t size() const noexcept { return size_; }

  bool contains(Symbol a) const noexcept { return a < size_; }

  // Throws DomainError on the first out-of-alphabet symbol.
  void validate(SymbolSpan x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!contains(x[i])) {
        throw DomainError("symbol " + std::to_string(int(x[i])) +
                          " at position " + std::to_string(i) +
                          " outside alphabet of size " + std::to_string(size_));
      }
    }
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::uint32_t size_;
};

}  // namespace tuc
