// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "treecv/learner.hpp"

namespace treecv::learners {

/// Least-squares SGD with a fixed step size, iterates projected onto the unit
/// l2 ball, predicting with the running average of the projected iterates.
class LsqSgd final : public IncrementalLearner {
 public:
  LsqSgd(std::size_t dim, double step_size);

  std::string name() const override { return "lsqsgd"; }
  using IncrementalLearner::update;
  void update(const DataPoint& point) override;
  Prediction predict(std::span<const double> x) const override;
  SavedState snapshot() const override;
  void restore(const SavedState& state) override;
  std::unique_ptr<IncrementalLearner> fresh() const override;
  std::unique_ptr<IncrementalLearner> clone() const override;

  const std::vector<double>& current() const noexcept { return w_; }
  const std::vector<double>& average() const noexcept { return w_avg_; }
  std::uint64_t steps() const noexcept { return t_; }
  double step_size() const noexcept { return alpha_; }

 private:
  std::vector<std::uint64_t> fingerprint() const;

  std::vector<double> w_;
  std::vector<double> w_avg_;
  std::uint64_t t_ = 0;
  double alpha_;
};

/// Scales `v` onto the unit sphere when its norm exceeds 1.
void project_unit_ball(std::span<double> v) noexcept;

}  // namespace treecv::learners
