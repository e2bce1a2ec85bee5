// SPDX-License-Identifier: Apache-2.0
#include "treecv/learners/pegasos.hpp"

#include <cmath>

#include "state_util.hpp"

namespace treecv::learners {

Pegasos::Pegasos(std::size_t dim, double lambda) : w_(dim, 0.0), lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(Errc::invalid_argument, "PEGASOS lambda must be positive and finite");
}

void Pegasos::update(const DataPoint& point) {
  const int y = binary_outcome(point.y);
  if (point.x.size() != w_.size())
    throw Error(Errc::invalid_argument, "PEGASOS: point dimension does not match model");
  const double margin = y * dot(w_, point.x);
  ++t_;
  const double eta = 1.0 / (lambda_ * static_cast<double>(t_));
  const double shrink = 1.0 - eta * lambda_;
  for (auto& wi : w_) wi *= shrink;
  if (margin < 1.0) {
    const double step = eta * y;
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] += step * point.x[i];
  }
}

Prediction Pegasos::predict(std::span<const double> x) const {
  return dot(w_, x) >= 0.0 ? 1.0 : -1.0;
}

std::vector<std::uint64_t> Pegasos::fingerprint() const {
  return {w_.size(), detail::bits(lambda_)};
}

SavedState Pegasos::snapshot() const {
  return SavedState{name(), fingerprint(), w_, {t_}, rng()};
}

void Pegasos::restore(const SavedState& state) {
  detail::check_compatible(state, name(), fingerprint());
  if (state.reals.size() != w_.size() || state.integers.size() != 1)
    throw Error(Errc::state_mismatch, "malformed PEGASOS state");
  w_ = state.reals;
  t_ = state.integers[0];
  mutable_rng() = state.rng;
}

std::unique_ptr<IncrementalLearner> Pegasos::fresh() const {
  return std::make_unique<Pegasos>(w_.size(), lambda_);
}

std::unique_ptr<IncrementalLearner> Pegasos::clone() const {
  return std::make_unique<Pegasos>(*this);
}

}  // namespace treecv::learners
