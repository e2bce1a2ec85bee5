// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "treecv/core.hpp"
#include "treecv/learner.hpp"
#include "treecv/report.hpp"

namespace treecv {

/// How an internal node keeps the incoming model for its second child.
enum class Strategy {
  copy,         // clone() before the first update
  save_revert,  // snapshot() before, restore() after the first subtree
};

std::string_view to_string(Strategy s) noexcept;
Strategy parse_strategy(std::string_view name);

struct TreeCvConfig {
  Strategy strategy = Strategy::copy;
  Ordering ordering = Ordering::fixed;
  /// 1 runs sequentially. Larger values let up to `threads` branches run at
  /// once; results are bit-identical to the sequential run.
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool trace = false;
};

/// Stream key for the permutation used when chunks first..last are fed as
/// one training phase under randomized ordering.
constexpr std::uint64_t feed_stream_key(std::uint64_t seed, std::size_t first,
                                        std::size_t last) noexcept {
  return derive_key(seed, {stream_tag::feed, first, last});
}

/// Stream key for the learner's own randomness in the branch entering heap
/// node `node` (root = 1, children 2i and 2i + 1).
constexpr std::uint64_t branch_stream_key(std::uint64_t seed, std::uint64_t node) noexcept {
  return derive_key(seed, {stream_tag::branch, node});
}

/// Feeds `points` to `model`: in order for fixed ordering, or as one uniformly
/// permuted batch drawn from `rng` for randomized ordering. Adds the number of
/// points to counters.point_updates.
void feed(IncrementalLearner& model, std::span<const DataPoint> points, Ordering ordering,
          CounterRng& rng, WorkCounters& counters);

/// k-fold CV estimate computed along the binary recursion tree over chunk
/// ranges. At node (s, e) with m = floor((s + e) / 2) the model is first
/// updated with chunks m+1..e and the left range s..m is solved; then the
/// preserved incoming model is updated with chunks s..m and the right range
/// m+1..e is solved. Leaves evaluate on their single held-out chunk.
///
/// Learner failures propagate with the offending node range appended to the
/// message.
CvReport tree_cv(const LearnerFactory& factory, const Dataset& data, const Partition& part,
                 const Loss& loss, const TreeCvConfig& config = {});

/// Leave-one-out: tree_cv with k = n.
CvReport loocv(const LearnerFactory& factory, const Dataset& data, const Loss& loss,
               const TreeCvConfig& config = {});

}  // namespace treecv
