#include "tuc/source_sim.hpp"

#include <cmath>
#include <string>

namespace tuc {

namespace {

std::size_t context_count(const MarkovSourceSpec& spec) {
  std::size_t m = 1;
  for (std::uint32_t i = 0; i < spec.order; ++i) {
    m *= spec.alphabet.size();
    if (m > (std::size_t(1) << 24)) {
      throw DomainError("context table too large to simulate");
    }
  }
  return m;
}

std::size_t sample(const std::vector<double>& dist, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i];
    if (u < acc) return i;
  }
  return dist.size() - 1;
}

}  // namespace

void validate_source(const MarkovSourceSpec& spec) {
  const std::size_t m = context_count(spec);
  if (spec.transitions.size() != m) {
    throw DomainError("expected " + std::to_string(m) + " transition rows");
  }
  for (const auto& row : spec.transitions) {
    if (row.size() != spec.alphabet.size()) {
      throw DomainError("transition row size does not match alphabet");
    }
    double sum = 0.0;
    for (double p : row) {
      if (!(p > 0.0)) {
        throw DomainError("transition rows must be everywhere positive");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw DomainError("transition row does not sum to 1");
    }
  }
  if (!spec.initial.empty()) {
    if (spec.initial.size() != m) {
      throw DomainError("initial distribution size mismatch");
    }
    double sum = 0.0;
    for (double p : spec.initial) {
      if (p < 0.0) throw DomainError("negative initial probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw DomainError("initial distribution does not sum to 1");
    }
  }
}

std::vector<double> stationary_distribution(const MarkovSourceSpec& spec) {
  validate_source(spec);
  const std::size_t m = context_count(spec);
  const std::uint32_t a = spec.alphabet.size();
  std::vector<double> pi(m, 1.0 / double(m));
  std::vector<double> next(m, 0.0);
  for (int iter = 0; iter < 100000; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t ctx = 0; ctx < m; ++ctx) {
      const double w = pi[ctx];
      if (w == 0.0) continue;
      for (std::uint32_t c = 0; c < a; ++c) {
        const std::size_t succ = (ctx * a + c) % m;
        next[succ] += w * spec.transitions[ctx][c];
      }
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) residual += std::abs(next[i] - pi[i]);
    pi.swap(next);
    if (residual < 1e-13) break;
  }
  return pi;
}

SymbolVec generate(const MarkovSourceSpec& spec, std::uint64_t n) {
  validate_source(spec);
  const std::size_t m = context_count(spec);
  const std::uint32_t a = spec.alphabet.size();
  SplitMix64 rng(spec.seed);
  SymbolVec out;
  out.reserve(n);

  const std::vector<double> init =
      spec.initial.empty() ? stationary_distribution(spec) : spec.initial;
  std::size_t ctx = sample(init, rng.uniform01());

  // Emit the initial context itself, most ancient symbol first.
  for (std::uint32_t i = 0; i < spec.order && out.size() < n; ++i) {
    const std::uint32_t shift = spec.order - 1 - i;
    std::size_t div = 1;
    for (std::uint32_t j = 0; j < shift; ++j) div *= a;
    out.push_back(Symbol((ctx / div) % a));
  }
  while (out.size() < n) {
    const Symbol c = Symbol(sample(spec.transitions[ctx], rng.uniform01()));
    out.push_back(c);
    ctx = (ctx * a + c) % m;
  }
  return out;
}

EntropyReport entropy_rate(const MarkovSourceSpec& spec, std::uint32_t R) {
  const std::vector<double> pi = stationary_distribution(spec);
  const std::size_t m = context_count(spec);
  const std::uint32_t a = spec.alphabet.size();

  // Joint law of (full context, next symbol) under stationarity.
  double h_inf = 0.0;
  for (std::size_t ctx = 0; ctx < m; ++ctx) {
    for (std::uint32_t c = 0; c < a; ++c) {
      const double p = spec.transitions[ctx][c];
      h_inf -= pi[ctx] * p * std::log2(p);
    }
  }

  EntropyReport report;
  report.h_inf = h_inf;
  report.h.resize(R + 1);
  for (std::uint32_t r = 0; r <= R; ++r) {
    if (r >= spec.order) {
      report.h[r] = h_inf;
      continue;
    }
    // Marginalize (context, next) down to (last r symbols, next).
    std::size_t mr = 1;
    for (std::uint32_t i = 0; i < r; ++i) mr *= a;
    std::vector<double> joint(mr * a, 0.0);
    for (std::size_t ctx = 0; ctx < m; ++ctx) {
      const std::size_t suffix = ctx % mr;
      for (std::uint32_t c = 0; c < a; ++c) {
        joint[suffix * a + c] += pi[ctx] * spec.transitions[ctx][c];
      }
    }
    double hr = 0.0;
    for (std::size_t u = 0; u < mr; ++u) {
      double marg = 0.0;
      for (std::uint32_t c = 0; c < a; ++c) marg += joint[u * a + c];
      if (marg <= 0.0) continue;
      for (std::uint32_t c = 0; c < a; ++c) {
        const double q = joint[u * a + c];
        if (q > 0.0) hr -= q * std::log2(q / marg);
      }
    }
    report.h[r] = hr;
  }
  return report;
}

MarkovSourceSpec bernoulli_source(double p1, std::uint64_t seed) {
  if (!(p1 > 0.0 && p1 < 1.0)) {
    throw DomainError("bernoulli parameter must lie in (0, 1)");
  }
  MarkovSourceSpec spec{Alphabet(2), 0, {{1.0 - p1, p1}}, {}, seed};
  return spec;
}

MarkovSourceSpec flip_chain_source(double q, std::uint64_t seed) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("flip probability must lie in (0, 1)");
  }
  MarkovSourceSpec spec{Alphabet(2), 1, {{1.0 - q, q}, {q, 1.0 - q}}, {}, seed};
  return spec;
}

MarkovSourceSpec noisy_parity_source(double q, std::uint64_t seed) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("flip probability must lie in (0, 1)");
  }
  MarkovSourceSpec spec{Alphabet(2), 2, {}, {}, seed};
  spec.transitions.resize(4);
  for (std::size_t ctx = 0; ctx < 4; ++ctx) {
    const unsigned parity = ((ctx >> 1) ^ ctx) & 1u;
    std::vector<double> row(2);
    row[parity] = 1.0 - q;
    row[1 - parity] = q;
    spec.transitions[ctx] = std::move(row);
  }
  return spec;
}

MarkovSourceSpec random_source(Alphabet alphabet, std::uint32_t order,
                               std::uint64_t seed) {
  MarkovSourceSpec spec{alphabet, order, {}, {}, seed};
  const std::size_t m = context_count(spec);
  SplitMix64 rng(seed ^ 0xA5A5A5A5A5A5A5A5ull);
  spec.transitions.resize(m);
  for (auto& row : spec.transitions) {
    row.resize(alphabet.size());
    double sum = 0.0;
    for (double& p : row) {
      p = 0.05 + rng.uniform01();
      sum += p;
    }
    for (double& p : row) p /= sum;
    // Renormalize exactly enough for the 1e-12 row-sum invariant.
    double check = 0.0;
    for (double p : row) check += p;
    row.back() += 1.0 - check;
  }
  return spec;
}

}  // namespace tuc
