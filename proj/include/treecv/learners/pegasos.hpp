// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "treecv/learner.hpp"

namespace treecv::learners {

/// Linear PEGASOS, one point per step, no projection, last iterate kept.
///
///   t <- t + 1,  eta = 1 / (lambda * t)
///   w <- (1 - eta * lambda) w + [y <w, x> < 1] eta y x
///
/// The margin is taken against the weights before the step. Prediction is
/// sign(<w, x>) with ties going to +1. The step counter continues across
/// update() calls, so feeding a sequence in one batch or in pieces gives the
/// same trajectory.
class Pegasos final : public IncrementalLearner {
 public:
  Pegasos(std::size_t dim, double lambda);

  std::string name() const override { return "pegasos"; }
  using IncrementalLearner::update;
  void update(const DataPoint& point) override;
  Prediction predict(std::span<const double> x) const override;
  SavedState snapshot() const override;
  void restore(const SavedState& state) override;
  std::unique_ptr<IncrementalLearner> fresh() const override;
  std::unique_ptr<IncrementalLearner> clone() const override;

  const std::vector<double>& weights() const noexcept { return w_; }
  std::uint64_t steps() const noexcept { return t_; }
  double lambda() const noexcept { return lambda_; }

 private:
  std::vector<std::uint64_t> fingerprint() const;

  std::vector<double> w_;
  std::uint64_t t_ = 0;
  double lambda_;
};

}  // namespace treecv::learners
