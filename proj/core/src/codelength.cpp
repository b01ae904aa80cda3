#include "tuc/codelength.hpp"

#include <algorithm>
#include <limits>

namespace tuc {

double mixture_code_length(std::span<const double> lengths,
                           const PriorWeights& prior) {
  if (lengths.empty()) {
    throw DomainError("mixture over an empty candidate set");
  }
  double lmin = std::numeric_limits<double>::infinity();
  for (double l : lengths) {
    if (!std::isfinite(l) || l < 0.0) {
      throw DomainError("mixture requires finite nonnegative lengths");
    }
    lmin = std::min(lmin, l);
  }
  if (prior.is_uniform()) {
    // -log2 sum (1/m) 2^-L  =  lmin + (log2 m - log2 sum 2^-(L - lmin)).
    // The grouping keeps the all-equal case exact: the log terms cancel to
    // zero before touching lmin.
    double s = 0.0;
    for (double l : lengths) s += std::exp2(lmin - l);
    return lmin + (std::log2(double(prior.family_size())) - std::log2(s));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    s += prior.weight(i + 1) * std::exp2(lmin - lengths[i]);
  }
  return lmin - std::log2(s);
}

}  // namespace tuc
