// SPDX-License-Identifier: Apache-2.0
#include "treecv/learners/lsqsgd.hpp"

#include <cmath>

#include "state_util.hpp"

namespace treecv::learners {

void project_unit_ball(std::span<double> v) noexcept {
  double sq = 0.0;
  for (double vi : v) sq += vi * vi;
  if (sq > 1.0) {
    const double norm = std::sqrt(sq);
    for (auto& vi : v) vi /= norm;
  }
}

LsqSgd::LsqSgd(std::size_t dim, double step_size)
    : w_(dim, 0.0), w_avg_(dim, 0.0), alpha_(step_size) {
  if (!(step_size > 0.0) || !std::isfinite(step_size))
    throw Error(Errc::invalid_argument, "LSQSGD step size must be positive and finite");
}

void LsqSgd::update(const DataPoint& point) {
  const double y = real_outcome(point.y);
  if (point.x.size() != w_.size())
    throw Error(Errc::invalid_argument, "LSQSGD: point dimension does not match model");
  // w <- w - alpha * 2 (<w,x> - y) x
  const double scale = alpha_ * 2.0 * (dot(w_, point.x) - y);
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] -= scale * point.x[i];
  project_unit_ball(w_);
  ++t_;
  const double inv_t = 1.0 / static_cast<double>(t_);
  for (std::size_t i = 0; i < w_.size(); ++i) w_avg_[i] += (w_[i] - w_avg_[i]) * inv_t;
}

Prediction LsqSgd::predict(std::span<const double> x) const { return dot(w_avg_, x); }

std::vector<std::uint64_t> LsqSgd::fingerprint() const {
  return {w_.size(), detail::bits(alpha_)};
}

SavedState LsqSgd::snapshot() const {
  std::vector<double> reals;
  reals.reserve(2 * w_.size());
  reals.insert(reals.end(), w_.begin(), w_.end());
  reals.insert(reals.end(), w_avg_.begin(), w_avg_.end());
  return SavedState{name(), fingerprint(), std::move(reals), {t_}, rng()};
}

void LsqSgd::restore(const SavedState& state) {
  detail::check_compatible(state, name(), fingerprint());
  const std::size_t d = w_.size();
  if (state.reals.size() != 2 * d || state.integers.size() != 1)
    throw Error(Errc::state_mismatch, "malformed LSQSGD state");
  w_.assign(state.reals.begin(), state.reals.begin() + static_cast<std::ptrdiff_t>(d));
  w_avg_.assign(state.reals.begin() + static_cast<std::ptrdiff_t>(d), state.reals.end());
  t_ = state.integers[0];
  mutable_rng() = state.rng;
}

std::unique_ptr<IncrementalLearner> LsqSgd::fresh() const {
  return std::make_unique<LsqSgd>(w_.size(), alpha_);
}

std::unique_ptr<IncrementalLearner> LsqSgd::clone() const {
  return std::make_unique<LsqSgd>(*this);
}

}  // namespace treecv::learners
