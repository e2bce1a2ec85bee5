// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "treecv/core.hpp"
#include "treecv/learner.hpp"

namespace treecv {

struct WorkCounters {
  std::uint64_t point_updates = 0;
  std::uint64_t snapshots = 0;
  std::uint64_t nodes_visited = 0;
  // One per (model, chunk) update: the model is shipped to where the chunk
  // lives and back.
  std::uint64_t model_transfers = 0;
  std::uint64_t evaluations = 0;

  WorkCounters& operator+=(const WorkCounters& o) noexcept {
    point_updates += o.point_updates;
    snapshots += o.snapshots;
    nodes_visited += o.nodes_visited;
    model_transfers += o.model_transfers;
    evaluations += o.evaluations;
    return *this;
  }
  friend bool operator==(const WorkCounters&, const WorkCounters&) = default;
};

enum class Scheduler { tree, standard };
enum class Ordering { fixed, randomized };

std::string_view to_string(Scheduler s) noexcept;
std::string_view to_string(Ordering o) noexcept;
Scheduler parse_scheduler(std::string_view name);
Ordering parse_ordering(std::string_view name);

/// One recursion node of a TreeCV run. Chunk indices are 0-based; leaves have
/// s == e == m and feed nothing.
struct NodeTrace {
  std::size_t s = 0;
  std::size_t e = 0;
  std::size_t m = 0;
  std::size_t points_fed_left = 0;
  std::size_t points_fed_right = 0;
  std::size_t depth = 0;

  friend bool operator==(const NodeTrace&, const NodeTrace&) = default;
};

struct CvReport {
  std::vector<double> per_fold_scores;
  double estimate = 0.0;
  WorkCounters counters;
  double wall_time = 0.0;
  Scheduler scheduler = Scheduler::tree;
  Ordering ordering = Ordering::fixed;
  std::uint64_t seed = 0;
  std::vector<NodeTrace> trace;
};

/// Everything except wall_time, compared bit for bit.
bool same_result(const CvReport& a, const CvReport& b) noexcept;

/// (1/k) * sum of fold scores, accumulated with compensation.
double mean_of_folds(std::span<const double> fold_scores) noexcept;

/// Mean loss of `model` over `chunk`. Predict-only; adds |chunk| to
/// counters.evaluations. Throws invalid_chunk on an empty chunk.
double evaluate_chunk(const IncrementalLearner& model, std::span<const DataPoint> chunk,
                      const Loss& loss, WorkCounters& counters);

}  // namespace treecv
