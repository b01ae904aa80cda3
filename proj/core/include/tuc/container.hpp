#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tuc/bitstream.hpp"
#include "tuc/codelength.hpp"

namespace tuc {

// Self-describing compressed document: <chosen index> followed by the chosen
// candidate's encoding of the full input. See docs/FORMAT.md for the byte
// layout and committed fixtures.
enum class ContainerFamily : std::uint8_t {
  BuiltinMarkov = 0,
  ExternalList = 1,
};

struct ContainerDocument {
  ContainerFamily family = ContainerFamily::BuiltinMarkov;
  std::uint32_t alphabet_size = 0;
  std::uint64_t original_length = 0;
  // Zero-based chosen index: the Markov order j for BuiltinMarkov, the
  // candidate ordinal minus one for ExternalList.
  std::uint32_t chosen_index = 0;
  // Width of the index field in bits. BuiltinMarkov commits to the zeta
  // prior: ceil(-log2 w(j+1)). ExternalList uses ceil(log2 m) for an
  // m-candidate registry.
  std::uint32_t index_bits = 0;
  // SHA-256 of the candidate registry file; ExternalList only.
  std::array<std::uint8_t, 32> registry_digest{};
  Bitstream payload;

  friend bool operator==(const ContainerDocument&,
                         const ContainerDocument&) = default;
};

// Index field width committed by the format for a builtin order j:
// ceil(-log2 w(j+1)) under the zeta prior, i.e. ceil(log2((j+1)(j+2))).
inline std::uint32_t builtin_index_width(std::uint32_t order) {
  return PriorWeights::zeta().penalty_bits(std::uint64_t(order) + 1);
}

// Index field width for an m-candidate external registry: ceil(log2 m).
inline std::uint32_t external_index_width(std::uint32_t m) {
  if (m == 0) throw DomainError("external registry is empty");
  return ceil_log2(m);
}

std::vector<std::uint8_t> write_container(const ContainerDocument& doc);

// Exact inverse of write_container. Throws DecodeError with a distinct kind
// for bad magic, truncation, malformed header fields, and an index field
// inconsistent with its committed width.
ContainerDocument read_container(std::span<const std::uint8_t> bytes);

// Bit-level accounting of a serialized container. The index word is reported
// separately so it can be audited apart from the fixed header plumbing.
struct ContainerAccounting {
  std::uint64_t header_bits = 0;   // magic, family, varints, digest
  std::uint64_t index_bits = 0;    // the <index> word itself
  std::uint64_t payload_bits = 0;  // chosen candidate's encoding
  std::uint64_t pad_bits = 0;      // zero padding to the byte boundary
  std::uint64_t total_bits() const {
    return header_bits + index_bits + payload_bits + pad_bits;
  }
};

ContainerAccounting container_accounting(const ContainerDocument& doc);

}  // namespace tuc
