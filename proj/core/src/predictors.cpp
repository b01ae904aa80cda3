#include "tuc/predictors.hpp"

#include <cmath>
#include <limits>

namespace tuc {

namespace {

Forecast rational_forecast(std::span<const std::uint64_t> numerators,
                           std::uint64_t denominator) {
  Forecast f;
  f.numerator.assign(numerators.begin(), numerators.end());
  f.denominator = denominator;
  f.p.resize(numerators.size());
  for (std::size_t a = 0; a < numerators.size(); ++a) {
    f.p[a] = double(numerators[a]) / double(denominator);
  }
  return f;
}

}  // namespace

Forecast laplace_predict(SymbolSpan x, Alphabet alphabet) {
  alphabet.validate(x);
  std::vector<std::uint64_t> num(alphabet.size(), 1);
  for (Symbol a : x) ++num[a];
  return rational_forecast(num, x.size() + alphabet.size());
}

Forecast predict_next(PredictorId id, SymbolSpan x, Alphabet alphabet) {
  if (id.family == PredictorId::Family::Laplace) {
    return laplace_predict(x, alphabet);
  }
  OnlinePredictor p(id, alphabet);
  for (Symbol a : x) p.consume(a);
  return p.forecast();
}

double sequence_log2_prob(PredictorId id, SymbolSpan x, Alphabet alphabet) {
  OnlinePredictor p(id, alphabet);
  for (Symbol a : x) p.consume(a);
  return -p.cumulative_log_loss();
}

OnlinePredictor::OnlinePredictor(PredictorId id, Alphabet alphabet)
    : id_(id), alphabet_(alphabet) {
  if (id.family == PredictorId::Family::Laplace) {
    counts_.assign(alphabet.size(), 0);
  } else {
    kt_.emplace(alphabet, id.order);
    window_.emplace(id.order);
  }
}

double OnlinePredictor::prob(Symbol a) const {
  if (!alphabet_.contains(a)) throw DomainError("symbol outside alphabet");
  if (id_.family == PredictorId::Family::Laplace) {
    return double(counts_[a] + 1) / double(total_ + alphabet_.size());
  }
  if (t_ < id_.order) {
    return 1.0 / double(alphabet_.size());
  }
  return kt_->conditional_prob(window_->key(), a);
}

Forecast OnlinePredictor::forecast() const {
  const std::uint32_t asize = alphabet_.size();
  std::vector<std::uint64_t> num(asize, 1);
  std::uint64_t den = asize;
  if (id_.family == PredictorId::Family::Laplace) {
    for (std::uint32_t a = 0; a < asize; ++a) num[a] = counts_[a] + 1;
    den = total_ + asize;
  } else if (t_ >= id_.order) {
    const ContextCounts::Row* row = kt_->find(window_->key());
    const std::uint64_t total = row ? row->total : 0;
    for (std::uint32_t a = 0; a < asize; ++a) {
      num[a] = 2 * std::uint64_t(row ? row->counts[a] : 0) + 1;
    }
    den = 2 * total + asize;
  }
  return rational_forecast(num, den);
}

double OnlinePredictor::consume(Symbol x) {
  const double step = -std::log2(prob(x));
  loss_ += step;
  if (id_.family == PredictorId::Family::Laplace) {
    ++counts_[x];
    ++total_;
  } else {
    if (t_ >= id_.order) kt_->add(window_->key(), x);
    window_->push(x);
  }
  ++t_;
  return step;
}

AdaptiveOnlinePredictor::AdaptiveOnlinePredictor(
    const std::vector<PredictorId>& candidates, PriorWeights prior,
    Alphabet alphabet)
    : prior_(prior) {
  if (candidates.empty()) {
    throw DomainError("adaptive predictor needs at least one candidate");
  }
  candidates_.reserve(candidates.size());
  for (PredictorId id : candidates) candidates_.emplace_back(id, alphabet);
  // Touch every prior weight up front so a too-small uniform domain fails
  // loudly at construction.
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    (void)prior_.weight(i + 1);
  }
}

std::vector<double> AdaptiveOnlinePredictor::scores() const {
  std::vector<double> s(candidates_.size());
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    s[i] = -std::log2(prior_.weight(i + 1)) +
           candidates_[i].cumulative_log_loss();
  }
  return s;
}

void AdaptiveOnlinePredictor::reselect() {
  const std::vector<double> s = scores();
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < s[best]) best = i;
  }
  active_ = best;
}

double AdaptiveOnlinePredictor::consume(Symbol x) {
  const double step = candidates_[active_].prob(x);
  const double active_loss = -std::log2(step);
  loss_ += active_loss;
  for (OnlinePredictor& c : candidates_) c.consume(x);
  ++t_;
  if (t_ == next_checkpoint_) {
    reselect();
    next_checkpoint_ *= 2;
  }
  return active_loss;
}

PredictorSelection select_predictor(SymbolSpan x, std::uint64_t r,
                                    std::span<const PredictorId> candidates,
                                    const PriorWeights& prior,
                                    Alphabet alphabet) {
  if (candidates.empty()) {
    throw DomainError("predictor selection needs candidates");
  }
  if (r > x.size()) {
    throw DomainError("trial prefix exceeds the sequence");
  }
  PredictorSelection sel;
  sel.scores.resize(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    sel.scores[i] = -std::log2(prior.weight(i + 1)) -
                    sequence_log2_prob(candidates[i], x.first(r), alphabet);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < sel.scores.size(); ++i) {
    if (sel.scores[i] < sel.scores[best]) best = i;
  }
  sel.chosen = candidates[best];
  sel.chosen_pos = best;
  sel.forecast = predict_next(sel.chosen, x, alphabet);
  return sel;
}

}  // namespace tuc
