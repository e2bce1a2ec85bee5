// SPDX-License-Identifier: Apache-2.0
#include "treecv/harness/bench.hpp"

#include <algorithm>

#include "treecv/dataio/synth.hpp"
#include "treecv/harness/csv.hpp"
#include "treecv/harness/run.hpp"

namespace treecv::harness {

double median(std::vector<double> values) {
  if (values.empty()) throw Error(Errc::empty_input, "median of nothing");
  std::ranges::sort(values);
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<BenchRow> cmd_bench(const ExperimentPlan& plan, const Dataset& data) {
  if (plan.n_grid.empty()) throw Error(Errc::invalid_argument, "bench needs an n-grid");
  if (!std::ranges::is_sorted(plan.n_grid))
    throw Error(Errc::invalid_argument, "n-grid must be ascending");
  if (plan.n_grid.back() > data.size())
    throw Error(Errc::invalid_argument, "n-grid exceeds the dataset size " +
                                            std::to_string(data.size()));
  for (std::size_t n : plan.n_grid) validate_plan(plan, n);

  std::vector<BenchRow> rows;
  std::size_t run_id = 0;
  for (std::size_t n : plan.n_grid) {
    const Dataset slice = dataio::head(data, n);
    const std::size_t first_row = rows.size();
    for (const auto& folds : plan.folds)
      for (auto scheduler : plan.schedulers)
        for (auto ordering : plan.orderings) {
          BenchRow row;
          row.n = n;
          row.k = folds.resolve(n);
          row.k_label = folds.label();
          row.scheduler = scheduler;
          row.ordering = ordering;
          row.repetitions = plan.repetitions;
          std::vector<double> times;
          for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
            const auto rec =
                execute_run(plan, slice, folds, scheduler, ordering, rep, ++run_id);
            if (rec.status != RunStatus::ok) {
              row.status = rec.status;
              break;
            }
            times.push_back(rec.wall_time);
            row.point_updates = rec.counters.point_updates;
          }
          if (row.status == RunStatus::ok) row.median_wall_time = median(times);
          rows.push_back(row);
        }

    auto find = [&](std::size_t k, Scheduler s, Ordering o) -> const BenchRow* {
      for (std::size_t i = first_row; i < rows.size(); ++i)
        if (rows[i].k == k && rows[i].scheduler == s && rows[i].ordering == o &&
            rows[i].status == RunStatus::ok)
          return &rows[i];
      return nullptr;
    };
    for (std::size_t i = first_row; i < rows.size(); ++i) {
      auto& row = rows[i];
      if (row.status != RunStatus::ok) continue;
      if (row.scheduler == Scheduler::tree)
        if (const auto* other = find(row.k, Scheduler::standard, row.ordering);
            other && row.median_wall_time > 0)
          row.speedup_vs_standard = other->median_wall_time / row.median_wall_time;
      if (row.ordering == Ordering::randomized)
        if (const auto* other = find(row.k, row.scheduler, Ordering::fixed);
            other && other->median_wall_time > 0)
          row.randomized_over_fixed = row.median_wall_time / other->median_wall_time;
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  write_csv_row(out, {"n", "k", "scheduler", "ordering", "reps", "status", "median_wall_s",
                      "point_updates", "speedup_vs_standard", "randomized_over_fixed"});
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : rows)
    write_csv_row(out, {std::to_string(r.n), r.k_label, std::string(to_string(r.scheduler)),
                        std::string(to_string(r.ordering)), std::to_string(r.repetitions),
                        std::string(to_string(r.status)),
                        r.status == RunStatus::ok ? format_double(r.median_wall_time) : "",
                        r.status == RunStatus::ok ? std::to_string(r.point_updates) : "",
                        opt(r.speedup_vs_standard), opt(r.randomized_over_fixed)});
}

}  // namespace treecv::harness
