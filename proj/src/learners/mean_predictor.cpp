// SPDX-License-Identifier: Apache-2.0
#include "treecv/learners/mean_predictor.hpp"

#include <cmath>
#include <utility>

#include "state_util.hpp"

namespace treecv::learners {

void MeanPredictor::update(const DataPoint& point) {
  // Shewchuk's grow-expansion: partials_ stays an exact, increasing-magnitude
  // representation of the running sum.
  double x = real_outcome(point.y);
  std::size_t kept = 0;
  for (double p : partials_) {
    if (std::abs(x) < std::abs(p)) std::swap(x, p);
    const double hi = x + p;
    const double lo = p - (hi - x);
    if (lo != 0.0) partials_[kept++] = lo;
    x = hi;
  }
  partials_.resize(kept);
  partials_.push_back(x);
  ++count_;
}

double MeanPredictor::sum() const noexcept {
  if (partials_.empty()) return 0.0;
  std::size_t i = partials_.size() - 1;
  double hi = partials_[i];
  double lo = 0.0;
  while (i > 0) {
    const double x = hi;
    const double y = partials_[--i];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  // Round half to even across the remaining partials.
  if (i > 0 && ((lo < 0.0 && partials_[i - 1] < 0.0) || (lo > 0.0 && partials_[i - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

Prediction MeanPredictor::predict(std::span<const double>) const {
  if (count_ == 0) throw Error(Errc::untrained_model, "mean predictor has seen no data");
  return sum() / static_cast<double>(count_);
}

SavedState MeanPredictor::snapshot() const {
  return SavedState{name(), {}, partials_, {count_}, rng()};
}

void MeanPredictor::restore(const SavedState& state) {
  detail::check_compatible(state, name(), {});
  if (state.integers.size() != 1)
    throw Error(Errc::state_mismatch, "malformed mean-predictor state");
  partials_ = state.reals;
  count_ = state.integers[0];
  mutable_rng() = state.rng;
}

std::unique_ptr<IncrementalLearner> MeanPredictor::fresh() const {
  return std::make_unique<MeanPredictor>();
}

std::unique_ptr<IncrementalLearner> MeanPredictor::clone() const {
  return std::make_unique<MeanPredictor>(*this);
}

}  // namespace treecv::learners
