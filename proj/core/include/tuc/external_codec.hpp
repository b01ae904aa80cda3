#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tuc/compressor.hpp"

namespace tuc {

// One line of a candidate registry file:
//   id <TAB> compress-cmd <TAB> decompress-cmd
// Commands are split on spaces; wrap anything needing quoting in a script.
struct ExternalCandidateSpec {
  std::uint32_t id = 0;
  std::vector<std::string> compress_cmd;
  std::vector<std::string> decompress_cmd;
};

struct ExternalRegistry {
  std::vector<ExternalCandidateSpec> candidates;  // ids 1..m in order
  std::array<std::uint8_t, 32> digest{};          // SHA-256 of the file bytes
};

ExternalRegistry parse_registry(std::span<const std::uint8_t> file_bytes);

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> bytes);

// An external compressor program as a selection candidate. Registration runs
// a probe roundtrip (compress then decompress a fixed 4 KiB input) and
// rejects candidates that do not restore it bit-exactly; the probe also
// yields the initial measured per-letter cost.
class ExternalCandidate final : public Compressor {
 public:
  struct Options {
    double trial_timeout_seconds = 30.0;
    double full_timeout_seconds = 600.0;
    // Lower clamp on the measured per-letter cost, so EMA updates from tiny
    // probes cannot drive the accounting to zero.
    double cost_floor = 1e-9;
    double ema_alpha = 0.3;
  };

  // Throws RegistrationError on spawn failure, nonzero exit, timeout, or
  // probe roundtrip mismatch.
  static std::unique_ptr<ExternalCandidate> register_candidate(
      ExternalCandidateSpec spec, const Options& options);
  static std::unique_ptr<ExternalCandidate> register_candidate(
      ExternalCandidateSpec spec) {
    return register_candidate(std::move(spec), Options());
  }

  std::string name() const override;
  std::uint64_t measure_bits(SymbolSpan prefix) override;
  Bitstream compress(SymbolSpan full) override;
  double cost_per_letter() const override;

  std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> payload,
                                       std::uint64_t expected_length) const;

  std::uint32_t id() const noexcept { return spec_.id; }
  double measured_cost() const noexcept { return measured_v_; }

 private:
  ExternalCandidate(ExternalCandidateSpec spec, Options options)
      : spec_(std::move(spec)), options_(options) {}

  void observe_cost(double seconds, std::size_t letters);

  ExternalCandidateSpec spec_;
  Options options_;
  double measured_v_ = 0.0;  // seconds per letter, exponentially smoothed
};

// Runs only the decompress side of a candidate (no probe registration);
// used when expanding a container against a digest-verified registry.
std::vector<std::uint8_t> run_decompress(const ExternalCandidateSpec& spec,
                                         std::span<const std::uint8_t> payload,
                                         std::uint64_t expected_length,
                                         double timeout_seconds);

// Registers every candidate in the registry. A failing candidate aborts
// registration: a registry is either fully usable or rejected.
std::vector<std::unique_ptr<ExternalCandidate>> register_all(
    const ExternalRegistry& registry,
    const ExternalCandidate::Options& options);

inline std::vector<std::unique_ptr<ExternalCandidate>> register_all(
    const ExternalRegistry& registry) {
  return register_all(registry, ExternalCandidate::Options());
}

}  // namespace tuc
