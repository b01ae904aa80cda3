#include <doctest.h>

#include <cmath>
#include <numeric>

#include "tuc/codelength.hpp"
#include "tuc/source_sim.hpp"

using namespace tuc;

namespace {

// Exact rational accumulator for the telescoping check.
struct Fraction {
  long long num = 0, den = 1;
  void add(long long n, long long d) {
    num = num * d + n * den;
    den *= d;
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
};

}  // namespace

TEST_CASE("zeta weights evaluate the defining rational exactly") {
  const PriorWeights zeta = PriorWeights::zeta();
  CHECK(zeta.weight(1) == 0.5);
  CHECK(zeta.weight(3) == 1.0 / 12.0);
  CHECK(zeta.weight(2) == 1.0 / 6.0);
  CHECK_THROWS_AS(zeta.weight(0), DomainError);
}

TEST_CASE("uniform weights and domain") {
  const PriorWeights u8 = PriorWeights::uniform_over(8);
  CHECK(u8.weight(5) == 1.0 / 8.0);
  CHECK(u8.weight(1) == 0.125);
  CHECK_THROWS_AS(u8.weight(9), DomainError);
  CHECK_THROWS_AS(PriorWeights::uniform_over(0), DomainError);
}

TEST_CASE("zeta partial sums telescope to 1 - 1/(K+1)") {
  Fraction sum;
  for (long long k = 1; k <= 60; ++k) {
    sum.add(1, k * (k + 1));
    CHECK(sum.num == k);
    CHECK(sum.den == k + 1);
  }
}

TEST_CASE("index penalty bits") {
  const PriorWeights zeta = PriorWeights::zeta();
  CHECK(zeta.penalty_bits(1) == 1);   // ceil(log2 2)
  CHECK(zeta.penalty_bits(3) == 4);   // 8 < 12 <= 16
  CHECK(zeta.penalty_bits(4) == 5);   // ceil(log2 20)
  const PriorWeights u8 = PriorWeights::uniform_over(8);
  for (std::uint64_t k = 1; k <= 8; ++k) CHECK(u8.penalty_bits(k) == 3);
  CHECK(PriorWeights::uniform_over(1).penalty_bits(1) == 0);
}

TEST_CASE("ceil_log2 on integer arguments") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(12) == 4);
  CHECK(ceil_log2(16) == 4);
  CHECK(ceil_log2(17) == 5);
}

TEST_CASE("mixture: single term") {
  const double l[] = {1.0};
  CHECK(mixture_code_length(l, PriorWeights::zeta()) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mixture: equal lengths under the matching uniform prior are exact") {
  for (std::size_t k : {1u, 2u, 3u, 5u, 7u, 12u}) {
    const std::vector<double> l(k, 3.25);
    CHECK(mixture_code_length(l, PriorWeights::uniform_over(std::uint32_t(k))) ==
          3.25);
  }
}

TEST_CASE("mixture: two-term zeta evaluates -log2(1/4 + 1/48)") {
  const double l[] = {1.0, 3.0};
  const double expected = -std::log2(0.5 * std::exp2(-1.0) +
                                     (1.0 / 6.0) * std::exp2(-3.0));
  CHECK(expected == doctest::Approx(-std::log2(13.0 / 48.0)).epsilon(1e-12));
  CHECK(mixture_code_length(l, PriorWeights::zeta()) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mixture: empty input is a domain error") {
  CHECK_THROWS_AS(mixture_code_length({}, PriorWeights::zeta()), DomainError);
  const double bad[] = {1.0, -2.0};
  CHECK_THROWS_AS(mixture_code_length(bad, PriorWeights::zeta()), DomainError);
}

TEST_CASE("mixture dominance, monotonicity, reorder stability") {
  SplitMix64 rng(20240801);
  for (int c = 0; c < 500; ++c) {
    const std::size_t k = 1 + rng.next() % 10;
    std::vector<double> l(k);
    for (double& v : l) v = 48.0 * rng.uniform01();
    for (const PriorWeights prior :
         {PriorWeights::zeta(), PriorWeights::uniform_over(std::uint32_t(k))}) {
      const double mix = mixture_code_length(l, prior);
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(mix <= l[i] - std::log2(prior.weight(i + 1)) + 1e-9);
      }
      // Decreasing any single length never increases the mixture.
      std::vector<double> smaller = l;
      const std::size_t j = rng.next() % k;
      smaller[j] = std::max(0.0, smaller[j] - 5.0);
      CHECK(mixture_code_length(smaller, prior) <= mix + 1e-9);
    }
    // Reordering is harmless under a uniform prior (equal weights).
    std::vector<double> rev(l.rbegin(), l.rend());
    const PriorWeights u = PriorWeights::uniform_over(std::uint32_t(k));
    CHECK(mixture_code_length(rev, u) ==
          doctest::Approx(mixture_code_length(l, u)).epsilon(1e-9));
  }
}
