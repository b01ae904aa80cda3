#include <doctest.h>

#include "tuc/bitstream.hpp"
#include "tuc/source_sim.hpp"

using namespace tuc;

TEST_CASE("bits are MSB-first within each byte") {
  Bitstream b;
  b.push_bit(true);
  b.push_bit(false);
  b.push_bit(true);
  CHECK(b.bit_count() == 3);
  REQUIRE(b.bytes().size() == 1);
  CHECK(b.bytes()[0] == 0xA0);

  Bitstream w;
  w.push_bits(0b1011, 4);
  CHECK(w.bytes()[0] == 0xB0);
  w.push_bits(0x1FF, 9);
  CHECK(w.bit_count() == 13);
  CHECK(w.bytes()[0] == 0xBF);
  CHECK(w.bytes()[1] == 0xF8);  // trailing pad bits zero
}

TEST_CASE("zero-width fields are no-ops") {
  Bitstream b;
  b.push_bits(0, 0);
  CHECK(b.bit_count() == 0);
  CHECK(b.bytes().empty());
  BitReader r(b);
  CHECK(r.read_bits(0) == 0);
}

TEST_CASE("writer/reader roundtrip with mixed widths") {
  SplitMix64 rng(99);
  for (int c = 0; c < 200; ++c) {
    Bitstream b;
    std::vector<std::pair<std::uint64_t, unsigned>> fields;
    for (int f = 0; f < 50; ++f) {
      const unsigned width = unsigned(rng.next() % 65);
      const std::uint64_t value =
          width == 64 ? rng.next() : rng.next() & ((1ull << width) - 1);
      fields.emplace_back(value, width);
      b.push_bits(value, width);
    }
    BitReader r(b);
    for (const auto& [value, width] : fields) {
      CHECK(r.read_bits(width) == value);
    }
    CHECK(r.remaining() == 0);
    CHECK_THROWS_AS(r.read_bit(), DecodeError);
  }
}

TEST_CASE("append concatenates at the bit level") {
  Bitstream a;
  a.push_bits(0b101, 3);
  Bitstream b;
  b.push_bits(0b0110, 4);
  a.append(b);
  CHECK(a.bit_count() == 7);
  CHECK(a.bytes()[0] == 0xAC);  // 101 0110 0
}

TEST_CASE("pad bits of the final byte stay zero") {
  SplitMix64 rng(7);
  for (int c = 0; c < 100; ++c) {
    Bitstream b;
    const int bits = 1 + int(rng.next() % 40);
    for (int i = 0; i < bits; ++i) b.push_bit(rng.next() & 1);
    if (b.bit_count() % 8 != 0) {
      const unsigned used = unsigned(b.bit_count() % 8);
      CHECK((b.bytes().back() & (0xFFu >> used)) == 0);
    }
  }
}

TEST_CASE("from_bytes adopts whole bytes") {
  const Bitstream b = Bitstream::from_bytes({0xDE, 0xAD});
  CHECK(b.bit_count() == 16);
  BitReader r(b);
  CHECK(r.read_bits(16) == 0xDEAD);
}

TEST_CASE("reader rejects a bit count beyond the bytes") {
  const std::uint8_t one[] = {0xFF};
  CHECK_THROWS_AS(BitReader(std::span<const std::uint8_t>(one, 1), 9),
                  DecodeError);
}
