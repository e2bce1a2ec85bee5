// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "treecv/harness/plan.hpp"

namespace treecv::harness {

/// Aggregate of the records sharing every plan coordinate except the
/// repetition.
struct ReportRow {
  std::string dataset;
  std::string learner;
  std::string loss;
  std::size_t n = 0;
  std::string k_label;
  std::size_t k = 0;
  Scheduler scheduler = Scheduler::tree;
  Ordering ordering = Ordering::fixed;
  Strategy strategy = Strategy::copy;
  std::size_t count = 0;  // records with status ok
  double mean = 0.0;
  double std = 0.0;        // population standard deviation
  std::string status;      // ok | N/A (budget exceeded) | error | partial
  std::vector<std::size_t> row_ids;  // every record in the group
};

std::vector<RunRecord> read_records(std::istream& in);

/// Groups in order of first appearance. Throws empty_input for no records.
std::vector<ReportRow> cmd_report(const std::vector<RunRecord>& records);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// One block per (dataset, learner, loss, n); rows are fold counts, columns
/// the four scheduler x ordering combinations; cells read "mean (std)"
/// after multiplying by `scale`.
void write_report_table(std::ostream& out, const std::vector<ReportRow>& rows, double scale);

}  // namespace treecv::harness
