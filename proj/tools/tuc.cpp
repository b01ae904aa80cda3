// tuc: time-universal compression and prediction toolkit.
//
// Subcommands: compress, decompress, predict, simulate, bench.
// Exit codes: 0 success, 2 usage, 3 I/O, 4 container/decode error,
// 5 registry digest mismatch, 6 external tool failure, 7 bad input domain,
// 1 internal error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tuc/bench_suite.hpp"
#include "tuc/container.hpp"
#include "tuc/external_codec.hpp"
#include "tuc/kt_codec.hpp"
#include "tuc/predictors.hpp"
#include "tuc/selector.hpp"
#include "tuc/source_sim.hpp"

namespace {

using json = nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kDecode = 4,
  kDigest = 5,
  kExternal = 6,
  kDomain = 7,
};

struct IoError : tuc::Error {
  using Error::Error;
};

struct DigestMismatch : tuc::Error {
  using Error::Error;
};

std::vector<std::uint8_t> read_input(const std::string& path) {
  if (path == "-") {
    std::vector<std::uint8_t> data;
    char buf[65536];
    while (std::cin.read(buf, sizeof buf) || std::cin.gcount() > 0) {
      data.insert(data.end(), buf, buf + std::cin.gcount());
    }
    return data;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> data{std::istreambuf_iterator<char>(in),
                                 std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failed on " + path);
  return data;
}

void write_output(const std::string& path, std::span<const std::uint8_t> data) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()),
                    std::streamsize(data.size()));
    std::cout.flush();
    if (!std::cout) throw IoError("write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            std::streamsize(data.size()));
  if (!out) throw IoError("write failed on " + path);
}

void emit_record(const std::string& report_path, const json& record) {
  const std::string line = record.dump();
  if (report_path.empty()) {
    std::cerr << line << "\n";
    return;
  }
  std::ofstream out(report_path, std::ios::app);
  if (!out) throw IoError("cannot append to " + report_path);
  out << line << "\n";
}

std::string hex_digest(const std::array<std::uint8_t, 32>& d) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (std::uint8_t b : d) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

struct CompressArgs {
  std::string input = "-";
  std::string output;
  std::string family = "builtin";
  std::string registry_path;
  std::string report_path;
  std::string prior = "zeta";
  double delta = 0.1;
  double cost_bound = 0.0;  // 0 means family default
  std::uint32_t alphabet_size = 256;
  std::uint32_t max_order = 24;
};

int cmd_compress(const CompressArgs& args) {
  const std::vector<std::uint8_t> input = read_input(args.input);
  const std::uint64_t n = input.size();
  json record = {{"command", "compress"},
                 {"input", args.input},
                 {"family", args.family},
                 {"n", n},
                 {"delta", args.delta}};

  tuc::ContainerDocument doc;
  doc.original_length = n;
  tuc::SelectionOutcome outcome;
  double v = args.cost_bound;

  if (args.family == "builtin") {
    if (v == 0.0) v = 1.0;
    const tuc::Alphabet alphabet(args.alphabet_size);
    alphabet.validate(input);
    const tuc::PriorWeights prior =
        args.prior == "uniform"
            ? tuc::PriorWeights::uniform_over(args.max_order + 1)
            : tuc::PriorWeights::zeta();
    const tuc::TimeBudget budget(n, args.delta, v);
    tuc::CompressionResult res = tuc::select_countable_psi(
        input, alphabet, prior, budget, args.max_order);
    outcome = res.outcome;
    doc.family = tuc::ContainerFamily::BuiltinMarkov;
    doc.alphabet_size = args.alphabet_size;
    doc.chosen_index = outcome.chosen;
    doc.index_bits = tuc::builtin_index_width(outcome.chosen);
    doc.payload = std::move(res.payload);
    record["chosen"] = "psi" + std::to_string(outcome.chosen);
  } else {
    // Seconds per letter. Probe measurements include process startup, so
    // the default bound is deliberately loose; tighten it per deployment.
    if (v == 0.0) v = 1e-2;
    const std::vector<std::uint8_t> reg_bytes = read_input(args.registry_path);
    const tuc::ExternalRegistry registry = tuc::parse_registry(reg_bytes);
    auto candidates = tuc::register_all(registry);
    tuc::TimeBudget budget(n, args.delta, v);
    std::vector<tuc::Compressor*> ptrs;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates[i]->measured_cost() > v) {
        throw tuc::RegistrationError(
            candidates[i]->name() +
            " measured cost exceeds the bound; raise --cost-bound");
      }
      budget.set_measured_cost(std::uint32_t(i), candidates[i]->measured_cost());
      ptrs.push_back(candidates[i].get());
    }
    const std::uint32_t m = std::uint32_t(ptrs.size());
    tuc::CompressionResult res = tuc::select_finite(
        input, ptrs, tuc::PriorWeights::uniform_over(m), budget);
    outcome = res.outcome;
    doc.family = tuc::ContainerFamily::ExternalList;
    doc.alphabet_size = 256;
    doc.chosen_index = outcome.chosen;
    doc.index_bits = tuc::external_index_width(m);
    doc.registry_digest = registry.digest;
    doc.payload = std::move(res.payload);
    record["registry_digest"] = hex_digest(registry.digest);
    record["chosen"] = candidates[outcome.chosen]->name();
  }

  const std::vector<std::uint8_t> bytes = tuc::write_container(doc);
  std::string out_path = args.output;
  if (out_path.empty()) {
    out_path = args.input == "-" ? std::string("-") : args.input + ".tuc";
  }
  write_output(out_path, bytes);

  const tuc::ContainerAccounting acc = tuc::container_accounting(doc);
  record["chosen_index"] = outcome.chosen;
  record["trial_prefixes"] = outcome.trial_prefixes;
  record["scores"] = outcome.scores;
  record["trial_cost"] = outcome.trial_cost;
  record["delta_T"] = args.delta * double(n) * v;
  record["v"] = v;
  record["total_cost"] = outcome.total_cost;
  record["header_bits"] = acc.header_bits;
  record["index_bits"] = acc.index_bits;
  record["payload_bits"] = acc.payload_bits;
  record["pad_bits"] = acc.pad_bits;
  record["total_bits"] = acc.total_bits();
  record["output"] = out_path;
  if (!outcome.warnings.empty()) record["warnings"] = outcome.warnings;
  emit_record(args.report_path, record);
  return kOk;
}

struct DecompressArgs {
  std::string input = "-";
  std::string output = "-";
  std::string registry_path;
};

int cmd_decompress(const DecompressArgs& args) {
  const std::vector<std::uint8_t> bytes = read_input(args.input);
  const tuc::ContainerDocument doc = tuc::read_container(bytes);
  if (doc.family == tuc::ContainerFamily::BuiltinMarkov) {
    const tuc::Alphabet alphabet(doc.alphabet_size);
    const tuc::KtMarkovCodec codec(alphabet, doc.chosen_index);
    const tuc::SymbolVec out = codec.decode(doc.payload, doc.original_length);
    write_output(args.output, out);
    return kOk;
  }
  if (args.registry_path.empty()) {
    throw IoError("external container needs --registry");
  }
  const std::vector<std::uint8_t> reg_bytes = read_input(args.registry_path);
  const tuc::ExternalRegistry registry = tuc::parse_registry(reg_bytes);
  if (registry.digest != doc.registry_digest) {
    throw DigestMismatch(
        "registry digest mismatch: container was written with " +
        hex_digest(doc.registry_digest) + ", got " +
        hex_digest(registry.digest));
  }
  if (doc.index_bits != tuc::external_index_width(
                            std::uint32_t(registry.candidates.size()))) {
    throw tuc::DecodeError(tuc::DecodeError::Kind::IndexMismatch,
                           "index width inconsistent with the registry size");
  }
  if (doc.chosen_index >= registry.candidates.size()) {
    throw tuc::DecodeError(tuc::DecodeError::Kind::IndexMismatch,
                           "chosen index outside the registry");
  }
  if (doc.payload.bit_count() % 8 != 0) {
    throw tuc::DecodeError(tuc::DecodeError::Kind::Corrupt,
                           "external payload is not byte aligned");
  }
  const std::vector<std::uint8_t> out = tuc::run_decompress(
      registry.candidates[doc.chosen_index], doc.payload.bytes(),
      doc.original_length, 600.0);
  write_output(args.output, out);
  return kOk;
}

struct PredictArgs {
  std::string input = "-";
  std::string predictor = "laplace";
  std::string input_mode = "bytes";
  std::string prior = "zeta";
  std::uint32_t alphabet_size = 0;  // 0: default by mode
  std::uint32_t max_order = 4;
  bool summary_only = false;
};

tuc::SymbolVec map_digits(std::span<const std::uint8_t> raw,
                          std::uint32_t alphabet_size) {
  tuc::SymbolVec out;
  out.reserve(raw.size());
  for (std::uint8_t b : raw) {
    if (b == '\n' || b == '\r' || b == '\t' || b == ' ') continue;
    if (b < '0' || b > '9' || std::uint32_t(b - '0') >= alphabet_size) {
      throw tuc::DomainError(std::string("digit input contains '") +
                             char(b) + "' outside the alphabet");
    }
    out.push_back(tuc::Symbol(b - '0'));
  }
  return out;
}

void print_forecast_line(std::uint64_t t, const char* symbol,
                         const tuc::Forecast& f, double cum_loss) {
  std::printf("%" PRIu64 " %s", t, symbol);
  for (double p : f.p) std::printf(" %.12g", p);
  std::printf(" %.12g\n", cum_loss);
}

std::string rational_forecast_string(const tuc::Forecast& f) {
  std::string s;
  for (std::size_t a = 0; a < f.numerator.size(); ++a) {
    const std::uint64_t g = std::gcd(f.numerator[a], f.denominator);
    if (a) s += " ";
    s += std::to_string(f.numerator[a] / g) + "/" +
         std::to_string(f.denominator / g);
  }
  return s;
}

int cmd_predict(const PredictArgs& args) {
  const std::vector<std::uint8_t> raw = read_input(args.input);
  const std::uint32_t asize =
      args.alphabet_size ? args.alphabet_size
                         : (args.input_mode == "digits" ? 10 : 256);
  const tuc::Alphabet alphabet(asize);
  tuc::SymbolVec x;
  if (args.input_mode == "digits") {
    x = map_digits(raw, asize);
  } else {
    x.assign(raw.begin(), raw.end());
    alphabet.validate(x);
  }

  const tuc::PriorWeights prior =
      args.prior == "uniform"
          ? tuc::PriorWeights::uniform_over(args.max_order + 2)
          : tuc::PriorWeights::zeta();

  std::unique_ptr<tuc::OnlinePredictor> single;
  std::unique_ptr<tuc::AdaptiveOnlinePredictor> adaptive;
  std::string name = args.predictor;
  if (args.predictor == "laplace") {
    single = std::make_unique<tuc::OnlinePredictor>(
        tuc::PredictorId::laplace(), alphabet);
  } else if (args.predictor.rfind("kt:", 0) == 0) {
    std::uint32_t k = 0;
    try {
      k = std::uint32_t(std::stoul(args.predictor.substr(3)));
    } catch (const std::exception&) {
      throw tuc::DomainError("bad KT order in " + args.predictor);
    }
    single = std::make_unique<tuc::OnlinePredictor>(tuc::PredictorId::kt(k),
                                                    alphabet);
  } else if (args.predictor == "adaptive") {
    std::vector<tuc::PredictorId> family = {tuc::PredictorId::laplace()};
    for (std::uint32_t k = 0; k <= args.max_order; ++k) {
      family.push_back(tuc::PredictorId::kt(k));
    }
    adaptive = std::make_unique<tuc::AdaptiveOnlinePredictor>(family, prior,
                                                              alphabet);
  } else {
    throw tuc::DomainError("unknown predictor " + args.predictor +
                           " (expected laplace, kt:K, or adaptive)");
  }

  const auto forecast = [&] {
    return single ? single->forecast() : adaptive->forecast();
  };
  const auto consume = [&](tuc::Symbol a) {
    return single ? single->consume(a) : adaptive->consume(a);
  };

  double cum = 0.0;
  if (!args.summary_only) print_forecast_line(0, "-", forecast(), 0.0);
  char symbuf[8];
  for (std::uint64_t t = 0; t < x.size(); ++t) {
    cum += consume(x[t]);
    if (!args.summary_only) {
      std::snprintf(symbuf, sizeof symbuf, "%u", unsigned(x[t]));
      print_forecast_line(t + 1, symbuf, forecast(), cum);
    }
  }
  const tuc::Forecast final = forecast();
  if (adaptive) {
    name = "adaptive(active=" +
           (adaptive->active() == 0
                ? std::string("laplace")
                : "kt" + std::to_string(adaptive->active() - 1)) +
           ")";
  }
  std::printf("# predictor=%s letters=%zu log_loss=%.12g per_letter=%.12g\n",
              name.c_str(), x.size(), cum,
              x.empty() ? 0.0 : cum / double(x.size()));
  std::printf("# final_forecast %s\n", rational_forecast_string(final).c_str());
  return kOk;
}

struct SimulateArgs {
  std::string kind = "bernoulli";
  std::string output = "-";
  std::string report_path;
  double p = 0.5;
  double q = 0.1;
  std::uint32_t alphabet_size = 2;
  std::uint32_t order = 1;
  std::uint64_t n = 1024;
  std::uint64_t seed = 1;
};

int cmd_simulate(const SimulateArgs& args) {
  tuc::MarkovSourceSpec spec = [&] {
    if (args.kind == "bernoulli") return tuc::bernoulli_source(args.p, args.seed);
    if (args.kind == "flip") return tuc::flip_chain_source(args.q, args.seed);
    if (args.kind == "parity") return tuc::noisy_parity_source(args.q, args.seed);
    if (args.kind == "random") {
      return tuc::random_source(tuc::Alphabet(args.alphabet_size), args.order,
                                args.seed);
    }
    throw tuc::DomainError("unknown source kind " + args.kind);
  }();
  const tuc::SymbolVec x = tuc::generate(spec, args.n);
  write_output(args.output, x);
  const std::uint32_t R = spec.order + 2;
  const tuc::EntropyReport er = tuc::entropy_rate(spec, R);
  json report = {{"kind", args.kind},         {"n", args.n},
                 {"seed", args.seed},         {"order", spec.order},
                 {"alphabet", spec.alphabet.size()}, {"h", er.h},
                 {"h_inf", er.h_inf}};
  if (args.kind == "bernoulli") report["p"] = args.p;
  if (args.kind == "flip" || args.kind == "parity") report["q"] = args.q;
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path, std::ios::trunc);
    if (!out) throw IoError("cannot create " + args.report_path);
    out << report.dump(2) << "\n";
  } else {
    std::cerr << report.dump() << "\n";
  }
  return kOk;
}

int cmd_bench(bool quick, std::uint64_t seed_base) {
  const tuc::BenchOptions options{quick, seed_base};
  const std::vector<tuc::CriterionResult> results =
      tuc::run_acceptance_suite(options);
  int failures = 0;
  std::printf("%-4s %-36s %-6s %s\n", "id", "criterion", "status", "detail");
  for (const tuc::CriterionResult& r : results) {
    std::printf("%-4d %-36s %-6s %s\n", r.id, r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("# %zu criteria, %d failed%s\n", results.size(), failures,
              quick ? " (quick subset)" : "");
  return failures == 0 ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-universal compression and prediction toolkit"};
  app.require_subcommand(1);

  CompressArgs cargs;
  CLI::App* comp = app.add_subcommand(
      "compress", "select a compressor within the time budget and encode");
  comp->add_option("input", cargs.input, "input file, or - for stdin");
  comp->add_option("-o,--output", cargs.output,
                   "output file (default: input + .tuc)");
  comp->add_option("--family", cargs.family, "candidate family")
      ->check(CLI::IsMember({"builtin", "external"}));
  comp->add_option("--registry", cargs.registry_path,
                   "candidate registry (external family)");
  comp->add_option("--delta", cargs.delta,
                   "extra-time fraction reserved for trials")
      ->check(CLI::PositiveNumber);
  comp->add_option("--prior", cargs.prior, "index prior for selection")
      ->check(CLI::IsMember({"zeta", "uniform"}));
  comp->add_option("--alphabet-size", cargs.alphabet_size,
                   "alphabet size for the builtin family")
      ->check(CLI::Range(2u, 256u));
  comp->add_option("--max-order", cargs.max_order,
                   "cap on the builtin Markov order")
      ->check(CLI::Range(0u, 24u));
  comp->add_option("--cost-bound", cargs.cost_bound,
                   "per-letter cost bound v (family default if omitted)");
  comp->add_option("--report", cargs.report_path,
                   "append a JSON-lines run record here");

  DecompressArgs dargs;
  CLI::App* dec = app.add_subcommand("decompress", "expand a container");
  dec->add_option("input", dargs.input, "container file, or - for stdin");
  dec->add_option("-o,--output", dargs.output, "output file, or - for stdout");
  dec->add_option("--registry", dargs.registry_path,
                  "candidate registry (external family)");

  PredictArgs pargs;
  CLI::App* pred = app.add_subcommand(
      "predict", "stream per-step forecasts and log-loss");
  pred->add_option("input", pargs.input, "input file, or - for stdin");
  pred->add_option("--predictor", pargs.predictor,
                   "laplace, kt:K, or adaptive");
  pred->add_option("--input-mode", pargs.input_mode, "bytes or digits")
      ->check(CLI::IsMember({"bytes", "digits"}));
  pred->add_option("--alphabet-size", pargs.alphabet_size,
                   "symbols are 0..size-1 (default 256 bytes / 10 digits)")
      ->check(CLI::Range(2u, 256u));
  pred->add_option("--max-order", pargs.max_order,
                   "largest KT order in the adaptive family")
      ->check(CLI::Range(0u, 24u));
  pred->add_option("--prior", pargs.prior, "index prior (adaptive)")
      ->check(CLI::IsMember({"zeta", "uniform"}));
  pred->add_flag("--summary-only", pargs.summary_only,
                 "suppress per-step forecast lines");

  SimulateArgs sargs;
  CLI::App* sim = app.add_subcommand(
      "simulate", "generate a seeded source with known entropy rates");
  sim->add_option("--kind", sargs.kind, "bernoulli, flip, parity, or random")
      ->check(CLI::IsMember({"bernoulli", "flip", "parity", "random"}));
  sim->add_option("-o,--output", sargs.output, "output file, or - for stdout");
  sim->add_option("--n", sargs.n, "letters to generate");
  sim->add_option("--seed", sargs.seed, "generator seed");
  sim->add_option("--p", sargs.p, "bernoulli P(1)");
  sim->add_option("--q", sargs.q, "flip probability (flip/parity kinds)");
  sim->add_option("--alphabet-size", sargs.alphabet_size,
                  "alphabet size (random kind)")
      ->check(CLI::Range(2u, 256u));
  sim->add_option("--order", sargs.order, "markov order (random kind)")
      ->check(CLI::Range(0u, 8u));
  sim->add_option("--report", sargs.report_path,
                  "write the h_r sidecar report here");

  bool quick = false;
  std::uint64_t seed_base = 1;
  CLI::App* bench = app.add_subcommand(
      "bench", "run the seeded acceptance experiments");
  bench->add_flag("--quick", quick, "smoke-test subset");
  bench->add_option("--seed-base", seed_base, "first seed of each experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (comp->parsed()) {
      if (cargs.family == "external" && cargs.registry_path.empty()) {
        std::cerr << "error: --family external needs --registry\n";
        return kUsage;
      }
      return cmd_compress(cargs);
    }
    if (dec->parsed()) return cmd_decompress(dargs);
    if (pred->parsed()) return cmd_predict(pargs);
    if (sim->parsed()) return cmd_simulate(sargs);
    if (bench->parsed()) return cmd_bench(quick, seed_base);
    return kUsage;
  } catch (const DigestMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDigest;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const tuc::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDecode;
  } catch (const tuc::RegistrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExternal;
  } catch (const tuc::TrialError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExternal;
  } catch (const tuc::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
