#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>

#include "tuc/errors.hpp"

namespace tuc {

// ceil(log2(x)) for integers >= 1, computed exactly.
constexpr std::uint32_t ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : std::uint32_t(std::bit_width(x - 1));
}

// A code length in bits: the ideal (real-valued) length -log2 of a model
// probability, and the integral bit count actually emitted where a codeword
// is materialized.
struct CodeLengthBits {
  double ideal = 0.0;
  std::uint64_t integral = 0;
};

// Prior weights over candidate indices k = 1, 2, ...
//
// Zeta:        w(k) = 1/(k(k+1)); partial sums telescope to 1 - 1/(K+1).
// UniformOver: w(k) = 1/m for 1 <= k <= m, undefined outside.
class PriorWeights {
 public:
  enum class Kind { Zeta, UniformOver };

  static PriorWeights zeta() { return PriorWeights(Kind::Zeta, 0); }

  static PriorWeights uniform_over(std::uint32_t m) {
    if (m == 0) throw DomainError("uniform prior needs m >= 1");
    return PriorWeights(Kind::UniformOver, m);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_uniform() const noexcept { return kind_ == Kind::UniformOver; }

  // Family size for uniform priors; 0 for the (countable) zeta prior.
  std::uint32_t family_size() const noexcept { return m_; }

  // w_k, formed as an exact rational and converted to double once.
  double weight(std::uint64_t k) const {
    check_domain(k);
    if (kind_ == Kind::UniformOver) return 1.0 / double(m_);
    return 1.0 / double(k * (k + 1));
  }

  // ceil(-log2 w_k): the bit cost of encoding index k. Exact integer math.
  std::uint32_t penalty_bits(std::uint64_t k) const {
    check_domain(k);
    if (kind_ == Kind::UniformOver) return ceil_log2(m_);
    return ceil_log2(k * (k + 1));
  }

 private:
  PriorWeights(Kind kind, std::uint32_t m) : kind_(kind), m_(m) {}

  void check_domain(std::uint64_t k) const {
    if (k == 0) throw DomainError("prior index starts at 1");
    if (kind_ == Kind::UniformOver && k > m_) {
      throw DomainError("index " + std::to_string(k) +
                        " outside uniform prior domain [1, " +
                        std::to_string(m_) + "]");
    }
    // Guard k(k+1) against 64-bit overflow.
    if (kind_ == Kind::Zeta && k > (std::uint64_t(1) << 31)) {
      throw DomainError("zeta prior index too large");
    }
  }

  Kind kind_;
  std::uint32_t m_;
};

// Length of the weighted mixture code over candidates i = 0..K:
//
//   -log2 sum_i w(i+1) * 2^(-L_i)
//
// computed with the exponents shifted by min L_i for stability. The result
// never exceeds L_i - log2 w(i+1) for any i. For uniform priors the constant
// weight is factored out of the sum, which also makes the all-equal-lengths
// case exact.
double mixture_code_length(std::span<const double> lengths,
                           const PriorWeights& prior);

}  // namespace tuc
