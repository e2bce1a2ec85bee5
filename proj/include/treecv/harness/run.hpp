// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "treecv/harness/plan.hpp"

namespace treecv::harness {

struct RunSinks {
  std::ostream* records = nullptr;  // CSV, header first, one flushed row per run
  std::ostream* trace = nullptr;    // CSV of recursion nodes when plan.trace
};

/// Checks every fold count against the dataset size. Throws
/// invalid_fold_count.
void validate_plan(const ExperimentPlan& plan, std::size_t n);

/// Runs one cell. Learner/scheduler failures become an error record rather
/// than an exception.
RunRecord execute_run(const ExperimentPlan& plan, const Dataset& data, FoldCount folds,
                      Scheduler scheduler, Ordering ordering, std::size_t repetition,
                      std::size_t run_id, std::ostream* trace_sink = nullptr);

/// Every (k, scheduler, ordering, repetition) cell of the plan in that
/// canonical order. Rows are written to the sinks as they complete.
std::vector<RunRecord> cmd_run(const ExperimentPlan& plan, const Dataset& data,
                               const RunSinks& sinks = {});

/// JSON array with one object per record, per-fold scores included.
std::string records_to_json(const std::vector<RunRecord>& records);

const std::vector<std::string>& trace_header();

}  // namespace treecv::harness
