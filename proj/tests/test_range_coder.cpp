#include <doctest.h>

#include <cmath>

#include "tuc/range_coder.hpp"
#include "tuc/source_sim.hpp"

using namespace tuc;

namespace {

// Static model roundtrip: encode symbols under fixed integer frequencies,
// decode them back, and account the ideal length.
struct StaticModel {
  std::vector<std::uint32_t> freq;
  std::vector<std::uint32_t> cum;  // cum[a] = sum of freq below a
  std::uint64_t total = 0;

  explicit StaticModel(std::vector<std::uint32_t> f) : freq(std::move(f)) {
    cum.resize(freq.size());
    for (std::size_t a = 0; a < freq.size(); ++a) {
      cum[a] = std::uint32_t(total);
      total += freq[a];
    }
  }

  std::size_t find(std::uint64_t target) const {
    std::size_t a = 0;
    while (a + 1 < freq.size() && target >= cum[a] + std::uint64_t(freq[a])) {
      ++a;
    }
    return a;
  }
};

}  // namespace

TEST_CASE("roundtrip under random static models") {
  SplitMix64 rng(31337);
  for (int c = 0; c < 300; ++c) {
    const std::size_t asize = 2 + rng.next() % 15;
    std::vector<std::uint32_t> freqs(asize);
    for (auto& f : freqs) f = 1 + std::uint32_t(rng.next() % 1000);
    StaticModel model(freqs);
    const std::size_t n = rng.next() % 400;
    std::vector<std::size_t> syms(n);
    for (auto& s : syms) s = rng.next() % asize;

    std::vector<std::uint8_t> bytes;
    RangeEncoder enc(bytes);
    double ideal = 0.0;
    for (std::size_t s : syms) {
      enc.encode(model.cum[s], model.freq[s], model.total);
      ideal -= std::log2(double(model.freq[s]) / double(model.total));
    }
    enc.finish();
    CHECK(8.0 * double(bytes.size()) <= ideal + 16.0);

    RangeDecoder dec(bytes);
    for (std::size_t s : syms) {
      const std::uint64_t target = dec.decode_target(model.total);
      const std::size_t got = model.find(target);
      CHECK(got == s);
      dec.consume(model.cum[got], model.freq[got]);
    }
  }
}

TEST_CASE("empty stream encodes to zero bytes") {
  std::vector<std::uint8_t> bytes;
  RangeEncoder enc(bytes);
  enc.finish();
  CHECK(bytes.empty());
}

TEST_CASE("single symbol stream") {
  StaticModel model({1, 1});
  std::vector<std::uint8_t> bytes;
  RangeEncoder enc(bytes);
  enc.encode(model.cum[1], model.freq[1], model.total);
  enc.finish();
  CHECK(bytes.size() <= 2);
  RangeDecoder dec(bytes);
  CHECK(model.find(dec.decode_target(model.total)) == 1);
}

TEST_CASE("heavily skewed model stays near the ideal length") {
  // 10^4 likely symbols under P = 4095/4096 cost ~3.5 bits total.
  StaticModel model({4095, 1});
  std::vector<std::uint8_t> bytes;
  RangeEncoder enc(bytes);
  const int n = 10000;
  double ideal = 0.0;
  for (int i = 0; i < n; ++i) {
    enc.encode(model.cum[0], model.freq[0], model.total);
    ideal -= std::log2(4095.0 / 4096.0);
  }
  enc.finish();
  CHECK(8.0 * double(bytes.size()) <= ideal + 16.0);
  RangeDecoder dec(bytes);
  for (int i = 0; i < n; ++i) {
    CHECK(model.find(dec.decode_target(model.total)) == 0);
    dec.consume(model.cum[0], model.freq[0]);
  }
}

TEST_CASE("decoder flags targets outside the model") {
  // 0xFF bytes force the scaled target to the top of the range.
  const std::vector<std::uint8_t> junk(16, 0xFF);
  RangeDecoder dec(junk);
  CHECK_THROWS_AS((void)dec.decode_target(2), DecodeError);
}

TEST_CASE("deep truncation trips the overrun cap") {
  StaticModel model({3, 5, 7, 2});
  std::vector<std::uint8_t> bytes;
  RangeEncoder enc(bytes);
  SplitMix64 rng(5);
  std::vector<std::size_t> syms(4000);
  for (auto& s : syms) s = rng.next() % 4;
  for (std::size_t s : syms) enc.encode(model.cum[s], model.freq[s], model.total);
  enc.finish();

  std::vector<std::uint8_t> cut(bytes.begin(),
                                bytes.begin() + long(bytes.size() / 2));
  RangeDecoder dec(cut);
  CHECK_THROWS_AS(
      [&] {
        for (std::size_t i = 0; i < syms.size(); ++i) {
          const std::size_t a = model.find(dec.decode_target(model.total));
          dec.consume(model.cum[a], model.freq[a]);
        }
      }(),
      DecodeError);
}
