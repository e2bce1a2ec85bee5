// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "treecv/dataio/synth.hpp"
#include "treecv/learners/factory.hpp"

namespace treecv::harness {

// Empirical incremental stability: how much does test performance change
// between a model that sees its training data in one batch and one that
// sees the same data as l successive chunk updates?
//
// A dataset of n points is split into l + 1 contiguous chunks; the last is
// the test chunk. The batch model is fresh() fed one uniformly shuffled pass
// over all training points. The incremental model is fresh() updated with
// chunk 1, then chunk 2, ..., each chunk shuffled on its own. Chunk 1 uses
// the batch model's shuffle stream, so with l = 1 the two models coincide.

struct StabilityConfig {
  learners::Kind learner = learners::Kind::pegasos;
  learners::Hyperparameters hyper;
  std::optional<LossKind> loss;
  dataio::SynthSpec synth;  // n is overridden by each entry of sizes
  std::vector<std::size_t> sizes{500, 2000, 8000};
  std::size_t seeds = 50;
  std::size_t chunks = 10;  // l
  std::uint64_t seed = 0;
};

struct StabilityRow {
  std::size_t n = 0;
  std::size_t chunks = 0;
  std::size_t seeds = 0;
  double mean_gap = 0.0;
  double std_gap = 0.0;  // population
  double mean_batch_risk = 0.0;
  double mean_incremental_risk = 0.0;
};

/// (R_test(batch model), R_test(incremental model)) on one dataset.
std::pair<double, double> batch_and_incremental_risk(const LearnerFactory& factory,
                                                     const Dataset& data, std::size_t chunks,
                                                     const Loss& loss, std::uint64_t key);

std::vector<StabilityRow> cmd_stability(const StabilityConfig& config);

void write_stability_csv(std::ostream& out, const std::vector<StabilityRow>& rows);

}  // namespace treecv::harness
