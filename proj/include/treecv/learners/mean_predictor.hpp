// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "treecv/learner.hpp"

namespace treecv::learners {

/// Predicts the mean outcome seen so far, ignoring the input. The sum is kept
/// exactly as non-overlapping partials and rounded once, so the model does
/// not depend on the order or batching of the data at all.
class MeanPredictor final : public IncrementalLearner {
 public:
  MeanPredictor() = default;

  std::string name() const override { return "mean"; }
  using IncrementalLearner::update;
  void update(const DataPoint& point) override;
  Prediction predict(std::span<const double> x) const override;
  SavedState snapshot() const override;
  void restore(const SavedState& state) override;
  std::unique_ptr<IncrementalLearner> fresh() const override;
  std::unique_ptr<IncrementalLearner> clone() const override;
  bool order_insensitive() const override { return true; }

  /// Correctly rounded sum of every outcome seen.
  double sum() const noexcept;
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::vector<double> partials_;
  std::uint64_t count_ = 0;
};

}  // namespace treecv::learners
