#pragma once

#include <cstdint>
#include <map>

#include "tuc/errors.hpp"

namespace tuc {

// Deterministic time-cost model for selection runs.
//
// n letters at a per-letter cost bound v give the base budget T = n*v; the
// extra trial budget is delta*T and the hard cap is T*(1+delta). Candidates
// may register a measured per-letter cost v_i <= v, which the accounting
// uses instead of the bound.
class TimeBudget {
 public:
  TimeBudget(std::uint64_t n, double delta, double v = 1.0)
      : n_(n), delta_(delta), v_(v) {
    if (!(delta > 0.0)) throw DomainError("delta must be positive");
    if (!(v > 0.0)) throw DomainError("per-letter cost bound must be positive");
  }

  std::uint64_t n() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }
  double v() const noexcept { return v_; }

  double base() const noexcept { return double(n_) * v_; }          // T
  double extra() const noexcept { return delta_ * base(); }         // delta T
  double cap() const noexcept { return base() * (1.0 + delta_); }   // T(1+delta)

  void set_measured_cost(std::uint32_t candidate, double vi) {
    if (!(vi > 0.0)) throw DomainError("measured cost must be positive");
    if (vi > v_) {
      throw DomainError("measured per-letter cost exceeds the bound v");
    }
    measured_[candidate] = vi;
  }

  double cost_per_letter(std::uint32_t candidate) const {
    auto it = measured_.find(candidate);
    return it == measured_.end() ? v_ : it->second;
  }

 private:
  std::uint64_t n_;
  double delta_;
  double v_;
  std::map<std::uint32_t, double> measured_;
};

}  // namespace tuc
