// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treecv/core.hpp"
#include "treecv/learner.hpp"
#include "treecv/report.hpp"

namespace treecv {

struct StandardCvConfig {
  Ordering ordering = Ordering::fixed;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

constexpr std::uint64_t fold_stream_key(std::uint64_t seed, std::size_t fold) noexcept {
  return derive_key(seed, {stream_tag::fold, fold});
}

constexpr std::uint64_t standard_order_key(std::uint64_t seed, std::size_t fold) noexcept {
  return derive_key(seed, {stream_tag::standard_order, fold});
}

/// Standard k-repetition CV: fold i trains a fresh model on every chunk but
/// Z_i (dataset order, or one seeded shuffle of the training indices) and
/// evaluates it on Z_i. Folds may run on `threads` workers; the result does
/// not depend on it.
CvReport standard_cv(const LearnerFactory& factory, const Dataset& data, const Partition& part,
                     const Loss& loss, const StandardCvConfig& config = {});

/// Standard CV with caller-chosen feeding orders. orders[i] lists dataset
/// indices and must be a permutation of the indices outside chunk i;
/// otherwise invalid_order is thrown. Learner streams follow standard_cv.
CvReport brute_force_oracle(const LearnerFactory& factory, const Dataset& data,
                            const Partition& part, const Loss& loss,
                            const std::vector<std::vector<std::size_t>>& orders,
                            std::uint64_t seed = 0);

/// The order in which TreeCV feeds points to the model that ends up
/// evaluated on chunk `fold`: walk from the root towards the leaf and, at
/// each node, append the half of the range the fold is not in. Randomized
/// ordering reproduces the per-phase shuffles of tree_cv with `seed`.
std::vector<std::size_t> tree_induced_order(const Partition& part, std::size_t fold,
                                            Ordering ordering = Ordering::fixed,
                                            std::uint64_t seed = 0);

}  // namespace treecv
