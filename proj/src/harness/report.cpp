// SPDX-License-Identifier: Apache-2.0
#include "treecv/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "treecv/harness/csv.hpp"

namespace treecv::harness {

std::vector<RunRecord> read_records(std::istream& in) {
  std::vector<RunRecord> out;
  std::vector<std::string> row;
  std::size_t line = 0;
  bool header_seen = false;
  while (read_csv_row(in, row)) {
    ++line;
    if (row.size() == 1 && row[0].empty()) continue;
    if (!header_seen) {
      if (row != record_header()) throw ParseError(line, "unexpected record header");
      header_seen = true;
      continue;
    }
    out.push_back(from_row(row, line));
  }
  return out;
}

std::vector<ReportRow> cmd_report(const std::vector<RunRecord>& records) {
  if (records.empty()) throw Error(Errc::empty_input, "no records to report");

  using Key = std::tuple<std::string, std::string, std::string, std::size_t, std::string,
                         Scheduler, Ordering, Strategy>;
  std::map<Key, std::size_t> index;
  std::vector<ReportRow> rows;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<RunStatus>> statuses;

  for (const auto& r : records) {
    const std::string k_label = r.k_label.empty() ? std::to_string(r.k) : r.k_label;
    const Key key{r.dataset, r.learner, r.loss, r.n, k_label, r.scheduler, r.ordering, r.strategy};
    auto [it, inserted] = index.try_emplace(key, rows.size());
    if (inserted) {
      ReportRow row;
      row.dataset = r.dataset;
      row.learner = r.learner;
      row.loss = r.loss;
      row.n = r.n;
      row.k_label = k_label;
      row.k = r.k;
      row.scheduler = r.scheduler;
      row.ordering = r.ordering;
      row.strategy = r.strategy;
      rows.push_back(std::move(row));
      values.emplace_back();
      statuses.emplace_back();
    }
    const std::size_t g = it->second;
    rows[g].row_ids.push_back(r.run_id);
    statuses[g].push_back(r.status);
    if (r.status == RunStatus::ok) values[g].push_back(r.estimate);
  }

  for (std::size_t g = 0; g < rows.size(); ++g) {
    auto& row = rows[g];
    const auto& v = values[g];
    row.count = v.size();
    if (!v.empty()) {
      double sum = 0.0;
      for (double x : v) sum += x;
      row.mean = sum / static_cast<double>(v.size());
      double sq = 0.0;
      for (double x : v) sq += (x - row.mean) * (x - row.mean);
      row.std = std::sqrt(sq / static_cast<double>(v.size()));
    }
    bool any_error = false;
    for (auto s : statuses[g]) any_error |= s == RunStatus::error;
    if (v.size() == statuses[g].size()) row.status = "ok";
    else if (v.empty()) row.status = any_error ? "error" : "N/A";
    else row.status = "partial";
  }
  return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  write_csv_row(out, {"dataset", "learner", "loss", "n", "k", "scheduler", "ordering", "strategy",
                      "count", "mean", "std_population", "status", "row_ids"});
  for (const auto& r : rows) {
    std::string ids;
    for (std::size_t i = 0; i < r.row_ids.size(); ++i)
      ids += (i ? ";" : "") + std::to_string(r.row_ids[i]);
    const bool has = r.count > 0;
    write_csv_row(out, {r.dataset, r.learner, r.loss, std::to_string(r.n), r.k_label,
                        std::string(to_string(r.scheduler)), std::string(to_string(r.ordering)),
                        std::string(to_string(r.strategy)), std::to_string(r.count),
                        has ? format_double(r.mean) : "", has ? format_double(r.std) : "",
                        r.status, ids});
  }
}

void write_report_table(std::ostream& out, const std::vector<ReportRow>& rows, double scale) {
  using Block = std::tuple<std::string, std::string, std::string, std::size_t>;
  std::vector<Block> blocks;
  for (const auto& r : rows) {
    const Block b{r.dataset, r.learner, r.loss, r.n};
    if (std::find(blocks.begin(), blocks.end(), b) == blocks.end()) blocks.push_back(b);
  }
  const std::pair<Scheduler, Ordering> columns[] = {{Scheduler::tree, Ordering::fixed},
                                                    {Scheduler::tree, Ordering::randomized},
                                                    {Scheduler::standard, Ordering::fixed},
                                                    {Scheduler::standard, Ordering::randomized}};
  char buf[128];
  for (const auto& [dataset, learner, loss, n] : blocks) {
    out << "# " << learner << " on " << dataset << " (n=" << n << "), " << loss << " x " << scale
        << ", mean (population std)\n";
    std::snprintf(buf, sizeof buf, "%-8s %-22s %-22s %-22s %-22s\n", "k", "TreeCV fixed",
                  "TreeCV randomized", "Standard fixed", "Standard randomized");
    out << buf;
    std::vector<std::string> ks;
    for (const auto& r : rows)
      if (std::tie(r.dataset, r.learner, r.loss, r.n) == std::tie(dataset, learner, loss, n) &&
          std::find(ks.begin(), ks.end(), r.k_label) == ks.end())
        ks.push_back(r.k_label);
    for (const auto& k : ks) {
      std::snprintf(buf, sizeof buf, "%-8s", k.c_str());
      out << buf;
      for (const auto& [sched, ord] : columns) {
        std::string cell = "-";
        for (const auto& r : rows)
          if (std::tie(r.dataset, r.learner, r.loss, r.n, r.k_label) ==
                  std::tie(dataset, learner, loss, n, k) &&
              r.scheduler == sched && r.ordering == ord) {
            if (r.count == 0) {
              cell = r.status;
            } else {
              std::snprintf(buf, sizeof buf, "%.2f (%.2f)", r.mean * scale, r.std * scale);
              cell = buf;
            }
          }
        std::snprintf(buf, sizeof buf, " %-22s", cell.c_str());
        out << buf;
      }
      out << '\n';
    }
    out << '\n';
  }
}

}  // namespace treecv::harness
