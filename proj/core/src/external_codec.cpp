#include "tuc/external_codec.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <sstream>

#include "tuc/source_sim.hpp"
#include "tuc/subprocess.hpp"

namespace tuc {

namespace {

std::vector<std::string> split_command(const std::string& field) {
  std::vector<std::string> argv;
  std::istringstream in(field);
  std::string word;
  while (in >> word) argv.push_back(word);
  return argv;
}

std::vector<std::uint8_t> probe_input() {
  // Fixed, mildly compressible 4 KiB probe.
  std::vector<std::uint8_t> probe(4096);
  SplitMix64 rng(0x70726f6265ull);  // "probe"
  for (std::size_t i = 0; i < probe.size(); ++i) {
    probe[i] = (i % 7 == 0) ? std::uint8_t(rng.next() & 0xFF)
                            : std::uint8_t(i & 0x3F);
  }
  return probe;
}

}  // namespace

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> bytes) {
  std::array<std::uint8_t, 32> digest{};
  SHA256(bytes.data(), bytes.size(), digest.data());
  return digest;
}

ExternalRegistry parse_registry(std::span<const std::uint8_t> file_bytes) {
  ExternalRegistry reg;
  reg.digest = sha256(file_bytes);
  std::string text(file_bytes.begin(), file_bytes.end());
  std::istringstream in(text);
  std::string line;
  std::uint32_t expected_id = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 =
        tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw DomainError("registry line needs id<TAB>compress<TAB>decompress: " +
                        line);
    }
    ExternalCandidateSpec spec;
    try {
      spec.id = std::uint32_t(std::stoul(line.substr(0, tab1)));
    } catch (const std::exception&) {
      throw DomainError("registry line has a malformed id: " + line);
    }
    if (spec.id != expected_id) {
      throw DomainError("registry ids must be sequential from 1");
    }
    ++expected_id;
    spec.compress_cmd = split_command(line.substr(tab1 + 1, tab2 - tab1 - 1));
    spec.decompress_cmd = split_command(line.substr(tab2 + 1));
    if (spec.compress_cmd.empty() || spec.decompress_cmd.empty()) {
      throw DomainError("registry commands must be nonempty");
    }
    reg.candidates.push_back(std::move(spec));
  }
  if (reg.candidates.empty()) {
    throw DomainError("registry has no candidates");
  }
  return reg;
}

std::unique_ptr<ExternalCandidate> ExternalCandidate::register_candidate(
    ExternalCandidateSpec spec, const Options& options) {
  auto cand = std::unique_ptr<ExternalCandidate>(
      new ExternalCandidate(std::move(spec), options));
  const std::vector<std::uint8_t> probe = probe_input();
  ProcessResult comp = run_process(cand->spec_.compress_cmd, probe,
                                   options.trial_timeout_seconds);
  if (comp.timed_out) {
    throw RegistrationError(cand->name() + ": compress probe timed out");
  }
  if (comp.exit_code != 0) {
    throw RegistrationError(cand->name() + ": compress probe exited with " +
                            std::to_string(comp.exit_code));
  }
  ProcessResult decomp = run_process(cand->spec_.decompress_cmd, comp.output,
                                     options.trial_timeout_seconds);
  if (decomp.timed_out || decomp.exit_code != 0) {
    throw RegistrationError(cand->name() + ": decompress probe failed");
  }
  if (decomp.output != probe) {
    throw RegistrationError(cand->name() +
                            ": probe roundtrip mismatch, candidate rejected");
  }
  cand->measured_v_ = std::max(comp.elapsed_seconds / double(probe.size()),
                               options.cost_floor);
  return cand;
}

std::string ExternalCandidate::name() const {
  return "ext" + std::to_string(spec_.id) + ":" + spec_.compress_cmd.front();
}

void ExternalCandidate::observe_cost(double seconds, std::size_t letters) {
  if (letters == 0) return;
  const double v = std::max(seconds / double(letters), options_.cost_floor);
  measured_v_ = measured_v_ == 0.0
                    ? v
                    : options_.ema_alpha * v +
                          (1.0 - options_.ema_alpha) * measured_v_;
}

std::uint64_t ExternalCandidate::measure_bits(SymbolSpan prefix) {
  ProcessResult r = run_process(spec_.compress_cmd, prefix,
                                options_.trial_timeout_seconds);
  if (r.timed_out) {
    throw TrialError(name() + ": trial timed out");
  }
  if (r.exit_code != 0) {
    throw TrialError(name() + ": trial exited with " +
                     std::to_string(r.exit_code));
  }
  observe_cost(r.elapsed_seconds, prefix.size());
  return 8 * std::uint64_t(r.output.size());
}

Bitstream ExternalCandidate::compress(SymbolSpan full) {
  ProcessResult r =
      run_process(spec_.compress_cmd, full, options_.full_timeout_seconds);
  if (r.timed_out || r.exit_code != 0) {
    throw Error(name() + ": full-file compression failed");
  }
  observe_cost(r.elapsed_seconds, full.size());
  return Bitstream::from_bytes(std::move(r.output));
}

double ExternalCandidate::cost_per_letter() const {
  return std::max(measured_v_, options_.cost_floor);
}

std::vector<std::uint8_t> ExternalCandidate::decompress(
    std::span<const std::uint8_t> payload, std::uint64_t expected_length) const {
  ProcessResult r =
      run_process(spec_.decompress_cmd, payload, options_.full_timeout_seconds);
  if (r.timed_out || r.exit_code != 0) {
    throw DecodeError(DecodeError::Kind::Corrupt,
                      name() + ": decompression failed");
  }
  if (r.output.size() != expected_length) {
    throw DecodeError(DecodeError::Kind::Corrupt,
                      name() + ": decompressed length " +
                          std::to_string(r.output.size()) + ", expected " +
                          std::to_string(expected_length));
  }
  return std::move(r.output);
}

std::vector<std::uint8_t> run_decompress(const ExternalCandidateSpec& spec,
                                         std::span<const std::uint8_t> payload,
                                         std::uint64_t expected_length,
                                         double timeout_seconds) {
  ProcessResult r = run_process(spec.decompress_cmd, payload, timeout_seconds);
  if (r.timed_out || r.exit_code != 0) {
    throw DecodeError(DecodeError::Kind::Corrupt,
                      spec.decompress_cmd.front() + ": decompression failed");
  }
  if (r.output.size() != expected_length) {
    throw DecodeError(DecodeError::Kind::Corrupt,
                      "decompressed length " + std::to_string(r.output.size()) +
                          ", expected " + std::to_string(expected_length));
  }
  return std::move(r.output);
}

std::vector<std::unique_ptr<ExternalCandidate>> register_all(
    const ExternalRegistry& registry,
    const ExternalCandidate::Options& options) {
  std::vector<std::unique_ptr<ExternalCandidate>> out;
  out.reserve(registry.candidates.size());
  for (const ExternalCandidateSpec& spec : registry.candidates) {
    out.push_back(ExternalCandidate::register_candidate(spec, options));
  }
  return out;
}

}  // namespace tuc
