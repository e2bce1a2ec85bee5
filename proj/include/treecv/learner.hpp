// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "treecv/core.hpp"
#include "treecv/rng.hpp"

namespace treecv {

/// Opaque, immutable capture of a learner's full state. The config
/// fingerprint (dimension, hyperparameter bits, ...) is checked on restore.
struct SavedState {
  std::string learner;
  std::vector<std::uint64_t> config;
  std::vector<double> reals;
  std::vector<std::uint64_t> integers;
  CounterRng rng;

  friend bool operator==(const SavedState&, const SavedState&) = default;
};

/// An incremental learning algorithm bundled with its current model.
///
/// A freshly constructed learner holds the empty model. update() incorporates
/// a batch in the given order (one pass for the online learners shipped
/// here), so fresh() followed by update(Z) is the model learned from Z alone.
/// Instances are single-threaded but may be handed between threads.
class IncrementalLearner {
 public:
  virtual ~IncrementalLearner() = default;

  virtual std::string name() const = 0;

  virtual void update(const DataPoint& point) = 0;
  virtual void update(std::span<const DataPoint> batch) {
    for (const auto& p : batch) update(p);
  }

  virtual Prediction predict(std::span<const double> x) const = 0;

  virtual SavedState snapshot() const = 0;
  /// Throws state_mismatch when `state` came from a different learner
  /// configuration.
  virtual void restore(const SavedState& state) = 0;

  /// Untrained learner with the same configuration.
  virtual std::unique_ptr<IncrementalLearner> fresh() const = 0;
  /// Deep copy of the learner including its model and random stream.
  virtual std::unique_ptr<IncrementalLearner> clone() const = 0;

  /// True when the final model does not depend on the feeding order or the
  /// batching of the data.
  virtual bool order_insensitive() const { return false; }

  void reseed(std::uint64_t key) { rng_ = CounterRng(key); }
  const CounterRng& rng() const noexcept { return rng_; }

 protected:
  CounterRng& mutable_rng() noexcept { return rng_; }

 private:
  CounterRng rng_;
};

using LearnerFactory = std::function<std::unique_ptr<IncrementalLearner>()>;

}  // namespace treecv
