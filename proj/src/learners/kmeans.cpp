// SPDX-License-Identifier: Apache-2.0
#include "treecv/learners/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "state_util.hpp"

namespace treecv::learners {

OnlineKMeans::OnlineKMeans(std::size_t dim, std::size_t clusters)
    : dim_(dim), clusters_(clusters) {
  if (clusters == 0) throw Error(Errc::invalid_argument, "k-means needs at least one cluster");
}

std::span<const double> OnlineKMeans::center(std::size_t j) const {
  if (j >= counts_.size()) throw Error(Errc::invalid_argument, "center index out of range");
  return std::span<const double>(centers_).subspan(j * dim_, dim_);
}

std::size_t OnlineKMeans::nearest(std::span<const double> x) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    const double d = squared_distance(x, center(j));
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

void OnlineKMeans::update(const DataPoint& point) {
  if (point.x.size() != dim_)
    throw Error(Errc::invalid_argument, "k-means: point dimension does not match model");
  if (counts_.size() < clusters_) {
    bool seen = false;
    for (std::size_t j = 0; j < counts_.size() && !seen; ++j)
      seen = std::ranges::equal(center(j), point.x);
    if (!seen) {
      centers_.insert(centers_.end(), point.x.begin(), point.x.end());
      counts_.push_back(1);
      return;
    }
  }
  const std::size_t j = nearest(point.x);
  const double inv = 1.0 / static_cast<double>(++counts_[j]);
  double* c = centers_.data() + j * dim_;
  for (std::size_t i = 0; i < dim_; ++i) c[i] += (point.x[i] - c[i]) * inv;
}

Prediction OnlineKMeans::predict(std::span<const double> x) const {
  if (counts_.empty()) throw Error(Errc::untrained_model, "k-means model has no centers yet");
  const auto c = center(nearest(x));
  return std::vector<double>(c.begin(), c.end());
}

SavedState OnlineKMeans::snapshot() const {
  return SavedState{name(), {dim_, clusters_}, centers_, counts_, rng()};
}

void OnlineKMeans::restore(const SavedState& state) {
  detail::check_compatible(state, name(), {dim_, clusters_});
  if (state.integers.size() > clusters_ || state.reals.size() != state.integers.size() * dim_)
    throw Error(Errc::state_mismatch, "malformed k-means state");
  centers_ = state.reals;
  counts_ = state.integers;
  mutable_rng() = state.rng;
}

std::unique_ptr<IncrementalLearner> OnlineKMeans::fresh() const {
  return std::make_unique<OnlineKMeans>(dim_, clusters_);
}

std::unique_ptr<IncrementalLearner> OnlineKMeans::clone() const {
  return std::make_unique<OnlineKMeans>(*this);
}

}  // namespace treecv::learners
