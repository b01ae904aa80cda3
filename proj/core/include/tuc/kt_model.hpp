#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <unordered_map>
#include <vector>

#include "tuc/alphabet.hpp"
#include "tuc/errors.hpp"

namespace tuc {

// Resource guard on the Markov order of built-in codecs.
inline constexpr std::uint32_t kMaxMarkovOrder = 24;

// Fixed-size key holding the last `len` symbols before the current position.
struct ContextKey {
  std::array<Symbol, kMaxMarkovOrder> sym{};
  std::uint8_t len = 0;

  friend bool operator==(const ContextKey&, const ContextKey&) = default;
};

struct ContextKeyHash {
  std::size_t operator()(const ContextKey& k) const noexcept {
    // FNV-1a over the padded symbol array plus the length byte.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (Symbol s : k.sym) {
      h = (h ^ s) * 0x100000001b3ull;
    }
    h = (h ^ k.len) * 0x100000001b3ull;
    return std::size_t(h);
  }
};

// Sliding window of the last k symbols, maintained as a ContextKey.
class ContextWindow {
 public:
  explicit ContextWindow(std::uint32_t order) {
    if (order > kMaxMarkovOrder) {
      throw DomainError("markov order exceeds cap of " +
                        std::to_string(kMaxMarkovOrder));
    }
    key_.len = std::uint8_t(order);
  }

  // Valid once at least `order` symbols have been pushed.
  const ContextKey& key() const noexcept { return key_; }

  void push(Symbol s) noexcept {
    const unsigned k = key_.len;
    if (k == 0) return;
    std::memmove(key_.sym.data(), key_.sym.data() + 1, k - 1);
    key_.sym[k - 1] = s;
  }

 private:
  ContextKey key_;
};

// Per-context symbol occurrence counts backing the KT estimator.
//
// Rows are stored sparsely, hash-keyed by context, and created on first
// touch. A row holds one count per alphabet symbol plus the row total.
class ContextCounts {
 public:
  struct Row {
    std::vector<std::uint32_t> counts;
    std::uint64_t total = 0;
  };

  ContextCounts(Alphabet alphabet, std::uint32_t order)
      : alphabet_(alphabet), order_(order) {
    if (order > kMaxMarkovOrder) {
      throw DomainError("markov order exceeds cap of " +
                        std::to_string(kMaxMarkovOrder));
    }
  }

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::uint32_t order() const noexcept { return order_; }
  std::size_t distinct_contexts() const noexcept { return table_.size(); }

  // Row for `key`, created zero-filled if absent.
  Row& row(const ContextKey& key) {
    check_key(key);
    Row& r = table_[key];
    if (r.counts.empty()) r.counts.assign(alphabet_.size(), 0);
    return r;
  }

  // Row for `key`, or nullptr if the context has never been seen.
  const Row* find(const ContextKey& key) const {
    check_key(key);
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
  }

  void add(const ContextKey& key, Symbol a) {
    Row& r = row(key);
    ++r.counts[a];
    ++r.total;
  }

  // KT estimate P(a | context) = (2 nu(a) + 1) / (2 total + |A|).
  // Sums to one over the alphabet for any fixed context.
  double conditional_prob(const ContextKey& key, Symbol a) const {
    if (!alphabet_.contains(a)) {
      throw DomainError("symbol outside alphabet");
    }
    const Row* r = find(key);
    const std::uint64_t nu = r ? r->counts[a] : 0;
    const std::uint64_t total = r ? r->total : 0;
    return double(2 * nu + 1) / double(2 * total + alphabet_.size());
  }

  // Convenience for callers holding a raw symbol string as context.
  double conditional_prob(SymbolSpan context, Symbol a) const {
    return conditional_prob(make_key(context), a);
  }

  ContextKey make_key(SymbolSpan context) const {
    if (context.size() != order_) {
      throw DomainError("context length " + std::to_string(context.size()) +
                        " does not match order " + std::to_string(order_));
    }
    ContextKey k;
    k.len = std::uint8_t(order_);
    std::memcpy(k.sym.data(), context.data(), context.size());
    return k;
  }

 private:
  void check_key(const ContextKey& key) const {
    if (key.len != order_) {
      throw DomainError("context length does not match order");
    }
  }

  Alphabet alphabet_;
  std::uint32_t order_;
  std::unordered_map<ContextKey, Row, ContextKeyHash> table_;
};

}  // namespace tuc
