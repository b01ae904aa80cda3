#include "tuc/container.hpp"

#include <cstring>
#include <string>

namespace tuc {

namespace {

constexpr char kMagic[4] = {'T', 'U', 'C', '1'};

void write_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  // Unsigned LEB128: 7 data bits per byte, continuation in the MSB.
  while (v >= 0x80) {
    out.push_back(std::uint8_t(v) | 0x80u);
    v >>= 7;
  }
  out.push_back(std::uint8_t(v));
}

std::size_t varint_size(std::uint64_t v) {
  std::size_t n = 1;
  while (v >= 0x80) {
    v >>= 7;
    ++n;
  }
  return n;
}

class ByteCursor {
 public:
  explicit ByteCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8(const char* what) {
    if (pos_ >= bytes_.size()) {
      throw DecodeError(DecodeError::Kind::Truncated,
                        std::string("container truncated in ") + what);
    }
    return bytes_[pos_++];
  }

  std::uint64_t varint(const char* what) {
    std::uint64_t v = 0;
    for (unsigned shift = 0; shift <= 63; shift += 7) {
      const std::uint8_t b = u8(what);
      const std::uint8_t data = b & 0x7F;
      if (shift == 63 && data > 1) {
        throw DecodeError(DecodeError::Kind::BadHeader,
                          std::string("varint overflow in ") + what);
      }
      v |= std::uint64_t(data) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw DecodeError(DecodeError::Kind::BadHeader,
                      std::string("varint too long in ") + what);
  }

  std::size_t pos() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void check_index_field(const ContainerDocument& doc) {
  if (doc.alphabet_size < 2 || doc.alphabet_size > 256) {
    throw DecodeError(DecodeError::Kind::BadHeader,
                      "alphabet size outside [2, 256]");
  }
  const std::uint64_t cap =
      doc.index_bits >= 64 ? ~std::uint64_t{0}
                           : (std::uint64_t(1) << doc.index_bits) - 1;
  if (doc.index_bits > 64 || doc.chosen_index > cap) {
    throw Error("chosen index does not fit the committed bit width");
  }
  if (doc.family == ContainerFamily::BuiltinMarkov &&
      doc.index_bits != builtin_index_width(doc.chosen_index)) {
    throw Error("builtin index width disagrees with the zeta rule");
  }
}

}  // namespace

std::vector<std::uint8_t> write_container(const ContainerDocument& doc) {
  check_index_field(doc);
  std::vector<std::uint8_t> out;
  out.reserve(doc.payload.bytes().size() + 32);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(std::uint8_t(doc.family));
  write_varint(out, doc.alphabet_size);
  write_varint(out, doc.original_length);
  if (doc.family == ContainerFamily::ExternalList) {
    out.insert(out.end(), doc.registry_digest.begin(),
               doc.registry_digest.end());
  }
  write_varint(out, doc.index_bits);
  write_varint(out, doc.payload.bit_count());
  Bitstream tail;
  tail.push_bits(doc.chosen_index, doc.index_bits);
  tail.append(doc.payload);
  out.insert(out.end(), tail.bytes().begin(), tail.bytes().end());
  return out;
}

ContainerDocument read_container(std::span<const std::uint8_t> bytes) {
  ByteCursor cur(bytes);
  char magic[4];
  for (char& c : magic) c = char(cur.u8("magic"));
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw DecodeError(DecodeError::Kind::BadMagic, "not a TUC1 container");
  }
  ContainerDocument doc;
  const std::uint8_t family = cur.u8("family");
  if (family > std::uint8_t(ContainerFamily::ExternalList)) {
    throw DecodeError(DecodeError::Kind::BadHeader,
                      "unknown family byte " + std::to_string(family));
  }
  doc.family = ContainerFamily(family);
  const std::uint64_t asize = cur.varint("alphabet size");
  if (asize < 2 || asize > 256) {
    throw DecodeError(DecodeError::Kind::BadHeader,
                      "alphabet size outside [2, 256]");
  }
  doc.alphabet_size = std::uint32_t(asize);
  doc.original_length = cur.varint("original length");
  if (doc.family == ContainerFamily::ExternalList) {
    for (std::uint8_t& b : doc.registry_digest) b = cur.u8("registry digest");
  }
  const std::uint64_t width = cur.varint("index width");
  if (width > 64) {
    throw DecodeError(DecodeError::Kind::BadHeader, "index width over 64");
  }
  doc.index_bits = std::uint32_t(width);
  const std::uint64_t payload_bits = cur.varint("payload length");

  const std::uint64_t tail_bits = width + payload_bits;
  const std::uint64_t tail_bytes = (tail_bits + 7) / 8;
  if (cur.remaining() < tail_bytes) {
    throw DecodeError(DecodeError::Kind::Truncated,
                      "container shorter than the declared payload");
  }
  if (cur.remaining() > tail_bytes) {
    throw DecodeError(DecodeError::Kind::BadHeader,
                      "container longer than the declared payload");
  }
  BitReader r(cur.rest(), tail_bits);
  doc.chosen_index = std::uint32_t(r.read_bits(unsigned(width)));
  Bitstream payload;
  for (std::uint64_t i = 0; i < payload_bits; ++i) {
    payload.push_bit(r.read_bit());
  }
  doc.payload = std::move(payload);
  // Trailing pad bits must be zero.
  const auto& tail = cur.rest();
  if (tail_bits % 8 != 0) {
    const std::uint8_t last = tail[tail_bytes - 1];
    const unsigned used = unsigned(tail_bits % 8);
    if ((last & std::uint8_t(0xFFu >> used)) != 0) {
      throw DecodeError(DecodeError::Kind::Corrupt, "nonzero padding bits");
    }
  }
  if (doc.family == ContainerFamily::BuiltinMarkov &&
      doc.index_bits != builtin_index_width(doc.chosen_index)) {
    throw DecodeError(DecodeError::Kind::IndexMismatch,
                      "index width inconsistent with the decoded index");
  }
  return doc;
}

ContainerAccounting container_accounting(const ContainerDocument& doc) {
  ContainerAccounting acc;
  std::uint64_t header_bytes = 4 + 1 + varint_size(doc.alphabet_size) +
                               varint_size(doc.original_length) +
                               varint_size(doc.index_bits) +
                               varint_size(doc.payload.bit_count());
  if (doc.family == ContainerFamily::ExternalList) header_bytes += 32;
  acc.header_bits = 8 * header_bytes;
  acc.index_bits = doc.index_bits;
  acc.payload_bits = doc.payload.bit_count();
  acc.pad_bits = (8 - (acc.index_bits + acc.payload_bits) % 8) % 8;
  return acc;
}

}  // namespace tuc
