// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treecv/core.hpp"
#include "treecv/dataio/synth.hpp"
#include "treecv/learners/factory.hpp"
#include "treecv/report.hpp"
#include "treecv/treecv.hpp"

namespace treecv::harness {

/// A fold count; `leave_one_out` stands for k = n of whatever dataset the
/// run sees.
struct FoldCount {
  std::size_t value = 0;
  bool leave_one_out = false;

  std::size_t resolve(std::size_t n) const { return leave_one_out ? n : value; }
  std::string label() const { return leave_one_out ? "n" : std::to_string(value); }
};

/// Parses "5,10,100,n".
std::vector<FoldCount> parse_fold_counts(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

struct DataSource {
  std::optional<std::string> path;
  std::optional<dataio::SynthSpec> synth;
  /// Applied in order after loading: unit-variance, targets-01, binarize=<class>.
  std::vector<std::string> transforms;

  std::string describe() const;
};

/// Loads the file or generates the synthetic set (from `seed`), then applies
/// the transforms, fitted on the full dataset.
Dataset load_dataset(const DataSource& source, std::uint64_t seed);

struct ExperimentPlan {
  DataSource source;
  learners::Kind learner = learners::Kind::pegasos;
  learners::Hyperparameters hyper;
  std::optional<LossKind> loss;  // defaults to the learner's loss
  std::vector<FoldCount> folds{{10, false}};
  std::vector<Scheduler> schedulers{Scheduler::tree};
  std::vector<Ordering> orderings{Ordering::fixed};
  Strategy strategy = Strategy::copy;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool shuffle = false;  // reshuffle the dataset per repetition
  bool trace = false;
  bool verify = false;
  /// Standard-CV runs needing more point updates than this are recorded as
  /// budget-exceeded instead of being run.
  std::uint64_t standard_budget = 50'000'000;
  std::vector<std::size_t> n_grid;  // bench only

  LossKind effective_loss() const { return loss.value_or(learners::default_loss(learner)); }
};

/// Seed for repetition `rep`: drives the optional shuffle and every stream
/// inside the run. Shared by both schedulers so they see the same partition.
constexpr std::uint64_t repetition_seed(std::uint64_t base, std::size_t rep) noexcept {
  return derive_key(base, {stream_tag::repetition, rep});
}

enum class RunStatus { ok, error, budget_exceeded };
std::string_view to_string(RunStatus s) noexcept;
RunStatus parse_run_status(std::string_view s);

/// One executed (scheduler, ordering, k, n, repetition) cell.
struct RunRecord {
  std::size_t run_id = 0;
  RunStatus status = RunStatus::ok;
  std::string dataset;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string learner;
  std::string loss;
  std::size_t k = 0;
  std::string k_label;
  Scheduler scheduler = Scheduler::tree;
  Ordering ordering = Ordering::fixed;
  Strategy strategy = Strategy::copy;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  WorkCounters counters;
  double wall_time = 0.0;
  std::string verified = "n/a";  // yes | no | n/a
  std::string message;
  std::vector<double> per_fold_scores;
};

const std::vector<std::string>& record_header();
std::vector<std::string> to_row(const RunRecord& r);
/// Inverse of to_row; throws parse_error on malformed rows.
RunRecord from_row(const std::vector<std::string>& row, std::size_t line);

}  // namespace treecv::harness
