// SPDX-License-Identifier: Apache-2.0
#include "treecv/treecv.hpp"

#include <atomic>
#include <chrono>
#include <future>
#include <string>

namespace treecv {

std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::copy ? "copy" : "save-revert";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "copy") return Strategy::copy;
  if (name == "save-revert" || name == "save_revert") return Strategy::save_revert;
  throw Error(Errc::invalid_argument, "unknown strategy '" + std::string(name) + "'");
}

void feed(IncrementalLearner& model, std::span<const DataPoint> points, Ordering ordering,
          CounterRng& rng, WorkCounters& counters) {
  if (ordering == Ordering::fixed || points.size() < 2) {
    model.update(points);
  } else {
    for (std::size_t i : random_permutation(points.size(), rng)) model.update(points[i]);
  }
  counters.point_updates += points.size();
}

namespace {

using ModelPtr = std::unique_ptr<IncrementalLearner>;

struct Branch {
  WorkCounters counters;
  std::vector<NodeTrace> trace;
};

class TreeRunner {
 public:
  TreeRunner(const Dataset& data, const Partition& part, const Loss& loss,
             const TreeCvConfig& config, std::vector<double>& scores)
      : data_(data), part_(part), loss_(loss), config_(config), scores_(scores),
        spare_workers_(config.threads > 1 ? static_cast<int>(config.threads) - 1 : 0) {}

  /// `model` is trained on every chunk outside s..e. It may be left in any
  /// state on return; callers that still need it keep their own copy.
  Branch run(IncrementalLearner& model, std::size_t s, std::size_t e, std::size_t depth,
             std::uint64_t node) {
    Branch out;
    ++out.counters.nodes_visited;

    if (s == e) {
      scores_[s] = evaluate_chunk(model, part_.chunk(data_, s), loss_, out.counters);
      if (config_.trace) out.trace.push_back({s, e, s, 0, 0, depth});
      return out;
    }

    const std::size_t m = (s + e) / 2;
    const std::size_t fed_left = part_.chunk_end(e) - part_.chunk_begin(m + 1);
    const std::size_t fed_right = part_.chunk_end(m) - part_.chunk_begin(s);
    if (config_.trace) out.trace.push_back({s, e, m, fed_left, fed_right, depth});
    ++out.counters.snapshots;

    Branch left, right;
    if (try_acquire_worker()) {
      // Both children need their own model before they can run concurrently.
      auto pending = std::async(std::launch::async, [this, s, e, m, depth, node,
                                                     owned = model.clone()]() {
        struct Release {
          std::atomic<int>& slots;
          ~Release() { slots.fetch_add(1); }
        } release{spare_workers_};
        return child(*owned, s, e, s, m, m + 1, e, depth, 2 * node);
      });
      // get() must run even if the right branch throws, so the task never
      // outlives this frame's references.
      try {
        right = child(model, s, e, m + 1, e, s, m, depth, 2 * node + 1);
      } catch (...) {
        pending.wait();
        throw;
      }
      left = pending.get();
    } else if (config_.strategy == Strategy::copy) {
      const ModelPtr preserved = model.clone();
      left = child(model, s, e, s, m, m + 1, e, depth, 2 * node);
      right = child(*preserved, s, e, m + 1, e, s, m, depth, 2 * node + 1);
    } else {
      const SavedState saved = model.snapshot();
      left = child(model, s, e, s, m, m + 1, e, depth, 2 * node);
      try {
        model.restore(saved);
      } catch (const std::exception& ex) {
        throw Error(Errc::inconsistent_state,
                    "failed to revert model at node (" + std::to_string(s) + ", " +
                        std::to_string(e) + "): " + ex.what());
      }
      right = child(model, s, e, m + 1, e, s, m, depth, 2 * node + 1);
    }

    merge(out, std::move(left));
    merge(out, std::move(right));
    return out;
  }

 private:
  // Enters child range [cs, ce] of node (s, e) after feeding chunks
  // [fs, fl] to `model`.
  Branch child(IncrementalLearner& model, std::size_t s, std::size_t e, std::size_t cs,
               std::size_t ce, std::size_t fs, std::size_t fl, std::size_t depth,
               std::uint64_t child_node) {
    Branch b;
    model.reseed(branch_stream_key(config_.seed, child_node));
    update(model, fs, fl, s, e, b.counters);
    merge(b, run(model, cs, ce, depth + 1, child_node));
    return b;
  }

  void update(IncrementalLearner& model, std::size_t first, std::size_t last,
              std::size_t s, std::size_t e, WorkCounters& counters) {
    CounterRng order_rng(feed_stream_key(config_.seed, first, last));
    try {
      feed(model, part_.chunks(data_, first, last), config_.ordering, order_rng, counters);
    } catch (const Error& ex) {
      throw Error(ex.code(), std::string(ex.what()) + " [node (" + std::to_string(s) + ", " +
                                 std::to_string(e) + "), feeding chunks " +
                                 std::to_string(first) + ".." + std::to_string(last) + "]");
    }
    counters.model_transfers += last - first + 1;
  }

  static void merge(Branch& into, Branch&& from) {
    into.counters += from.counters;
    into.trace.insert(into.trace.end(), std::make_move_iterator(from.trace.begin()),
                      std::make_move_iterator(from.trace.end()));
  }

  bool try_acquire_worker() {
    int avail = spare_workers_.load();
    while (avail > 0) {
      if (spare_workers_.compare_exchange_weak(avail, avail - 1)) return true;
    }
    return false;
  }

  const Dataset& data_;
  const Partition& part_;
  const Loss& loss_;
  const TreeCvConfig& config_;
  std::vector<double>& scores_;
  std::atomic<int> spare_workers_;
};

}  // namespace

CvReport tree_cv(const LearnerFactory& factory, const Dataset& data, const Partition& part,
                 const Loss& loss, const TreeCvConfig& config) {
  if (part.total() != data.size())
    throw Error(Errc::invalid_argument, "partition does not match dataset size");
  const auto start = std::chrono::steady_clock::now();

  CvReport report;
  report.scheduler = Scheduler::tree;
  report.ordering = config.ordering;
  report.seed = config.seed;
  report.per_fold_scores.assign(part.folds(), 0.0);

  ModelPtr root = factory();
  if (!root) throw Error(Errc::invalid_argument, "learner factory returned null");
  root->reseed(branch_stream_key(config.seed, 1));

  TreeRunner runner(data, part, loss, config, report.per_fold_scores);
  Branch result = runner.run(*root, 0, part.folds() - 1, 0, 1);

  report.counters = result.counters;
  report.trace = std::move(result.trace);
  report.estimate = mean_of_folds(report.per_fold_scores);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

CvReport loocv(const LearnerFactory& factory, const Dataset& data, const Loss& loss,
               const TreeCvConfig& config) {
  return tree_cv(factory, data, Partition::make(data.size(), data.size()), loss, config);
}

}  // namespace treecv
