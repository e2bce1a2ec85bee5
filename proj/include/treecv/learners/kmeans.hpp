// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "treecv/learner.hpp"

namespace treecv::learners {

// Sequential (MacQueen) k-means. The first K distinct points seen become the
// initial centers; every later point moves its nearest center (lowest index
// on ties) by (x - c) / count. Outcomes are ignored.
class OnlineKMeans final : public IncrementalLearner {
 public:
  OnlineKMeans(std::size_t dim, std::size_t clusters);

  std::string name() const override { return "kmeans"; }
  using IncrementalLearner::update;
  void update(const DataPoint& point) override;
  /// Nearest center among those initialized so far. Throws untrained_model
  /// before the first point.
  Prediction predict(std::span<const double> x) const override;
  SavedState snapshot() const override;
  void restore(const SavedState& state) override;
  std::unique_ptr<IncrementalLearner> fresh() const override;
  std::unique_ptr<IncrementalLearner> clone() const override;

  std::size_t clusters() const noexcept { return clusters_; }
  std::size_t initialized() const noexcept { return counts_.size(); }
  std::span<const double> center(std::size_t j) const;
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

 private:
  std::size_t nearest(std::span<const double> x) const;

  std::size_t dim_;
  std::size_t clusters_;
  std::vector<double> centers_;  // initialized() * dim_, row-major
  std::vector<std::uint64_t> counts_;
};

}  // namespace treecv::learners
