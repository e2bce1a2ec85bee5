// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "treecv/core.hpp"
#include "treecv/learner.hpp"

namespace treecv::testing {

/// 1-d dataset whose x[0] is the point's index and y is `outcomes[i]`.
inline Dataset indexed_dataset(const std::vector<double>& outcomes) {
  std::vector<DataPoint> pts;
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    pts.push_back({{static_cast<double>(i)}, outcomes[i]});
  return Dataset(std::move(pts), 1);
}

inline Dataset indexed_dataset(std::size_t n) {
  return indexed_dataset(std::vector<double>(n, 0.0));
}

/// Remembers the x[0] of every point it was fed, in order. Predicts 0.
class SpyLearner final : public IncrementalLearner {
 public:
  std::string name() const override { return "spy"; }
  using IncrementalLearner::update;
  void update(const DataPoint& p) override { seen.push_back(static_cast<std::size_t>(p.x[0])); }
  Prediction predict(std::span<const double>) const override {
    last_predicted_with->push_back(seen);
    return 0.0;
  }
  SavedState snapshot() const override {
    SavedState s{name(), {}, {}, {}, rng()};
    s.integers.assign(seen.begin(), seen.end());
    return s;
  }
  void restore(const SavedState& s) override {
    if (s.learner != name()) throw Error(Errc::state_mismatch, "not a spy state");
    seen.assign(s.integers.begin(), s.integers.end());
    mutable_rng() = s.rng;
  }
  std::unique_ptr<IncrementalLearner> fresh() const override {
    auto l = std::make_unique<SpyLearner>();
    l->last_predicted_with = last_predicted_with;
    return l;
  }
  std::unique_ptr<IncrementalLearner> clone() const override {
    return std::make_unique<SpyLearner>(*this);
  }

  std::vector<std::size_t> seen;
  // Shared log of the `seen` sequence at every prediction.
  std::shared_ptr<std::vector<std::vector<std::size_t>>> last_predicted_with =
      std::make_shared<std::vector<std::vector<std::size_t>>>();
};

/// Mean predictor that perturbs each update with its own random stream, to
/// observe which stream a model consumed.
class JitterMean final : public IncrementalLearner {
 public:
  std::string name() const override { return "jitter"; }
  using IncrementalLearner::update;
  void update(const DataPoint& p) override {
    sum += real_outcome(p.y) + 1e-3 * mutable_rng().uniform01();
    ++count;
  }
  Prediction predict(std::span<const double>) const override {
    return count ? sum / static_cast<double>(count) : 0.0;
  }
  SavedState snapshot() const override { return {name(), {}, {sum}, {count}, rng()}; }
  void restore(const SavedState& s) override {
    sum = s.reals.at(0);
    count = s.integers.at(0);
    mutable_rng() = s.rng;
  }
  std::unique_ptr<IncrementalLearner> fresh() const override {
    return std::make_unique<JitterMean>();
  }
  std::unique_ptr<IncrementalLearner> clone() const override {
    return std::make_unique<JitterMean>(*this);
  }

  double sum = 0.0;
  std::uint64_t count = 0;
};

/// Throws on the point whose x[0] equals `poison`.
class FailingLearner final : public IncrementalLearner {
 public:
  explicit FailingLearner(double poison) : poison_(poison) {}
  std::string name() const override { return "failing"; }
  using IncrementalLearner::update;
  void update(const DataPoint& p) override {
    if (p.x[0] == poison_) throw Error(Errc::invalid_argument, "poisoned point");
  }
  Prediction predict(std::span<const double>) const override { return 0.0; }
  SavedState snapshot() const override { return {name(), {}, {}, {}, rng()}; }
  void restore(const SavedState&) override {}
  std::unique_ptr<IncrementalLearner> fresh() const override {
    return std::make_unique<FailingLearner>(poison_);
  }
  std::unique_ptr<IncrementalLearner> clone() const override {
    return std::make_unique<FailingLearner>(*this);
  }

 private:
  double poison_;
};

}  // namespace treecv::testing
