// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "treecv/harness/plan.hpp"

namespace treecv::harness {

/// Runtime summary of one (n, k, scheduler, ordering) cell.
struct BenchRow {
  std::size_t n = 0;
  std::size_t k = 0;
  std::string k_label;
  Scheduler scheduler = Scheduler::tree;
  Ordering ordering = Ordering::fixed;
  std::size_t repetitions = 0;
  RunStatus status = RunStatus::ok;
  double median_wall_time = 0.0;
  std::uint64_t point_updates = 0;
  /// standard median / tree median for the same (n, k, ordering); on tree rows.
  std::optional<double> speedup_vs_standard;
  /// randomized median / fixed median for the same (n, k, scheduler); on
  /// randomized rows.
  std::optional<double> randomized_over_fixed;
};

double median(std::vector<double> values);

/// For each n of plan.n_grid (ascending, at most data.size()), runs the plan
/// on the first n points and reports median wall times over the repetitions.
std::vector<BenchRow> cmd_bench(const ExperimentPlan& plan, const Dataset& data);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace treecv::harness
