// SPDX-License-Identifier: Apache-2.0
#include "treecv/harness/run.hpp"

#include <bit>
#include "json.hpp"

#include "treecv/baseline.hpp"
#include "treecv/dataio/synth.hpp"
#include "treecv/harness/csv.hpp"

namespace treecv::harness {

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

std::string verify_tree_run(const LearnerFactory& factory, const Dataset& data,
                            const Partition& part, const Loss& loss, const CvReport& tree) {
  std::vector<std::vector<std::size_t>> orders;
  orders.reserve(part.folds());
  for (std::size_t i = 0; i < part.folds(); ++i)
    orders.push_back(tree_induced_order(part, i, tree.ordering, tree.seed));
  const auto replay = brute_force_oracle(factory, data, part, loss, orders, tree.seed);
  return bit_equal(replay.per_fold_scores, tree.per_fold_scores) ? "yes" : "no";
}

}  // namespace

const std::vector<std::string>& trace_header() {
  static const std::vector<std::string> header{
      "run_id", "s", "e", "m", "points_fed_left", "points_fed_right", "depth"};
  return header;
}

void validate_plan(const ExperimentPlan& plan, std::size_t n) {
  if (plan.repetitions == 0) throw Error(Errc::invalid_argument, "need at least one repetition");
  for (const auto& f : plan.folds) {
    const std::size_t k = f.resolve(n);
    if (k < 2 || k > n)
      throw Error(Errc::invalid_fold_count, "fold count " + f.label() + " (k=" +
                                                std::to_string(k) + ") is invalid for n=" +
                                                std::to_string(n));
  }
}

RunRecord execute_run(const ExperimentPlan& plan, const Dataset& data, FoldCount folds,
                      Scheduler scheduler, Ordering ordering, std::size_t repetition,
                      std::size_t run_id, std::ostream* trace_sink) {
  RunRecord rec;
  rec.run_id = run_id;
  rec.dataset = plan.source.describe();
  rec.n = data.size();
  rec.d = data.dim();
  rec.learner = std::string(learners::to_string(plan.learner));
  rec.loss = std::string(to_string(plan.effective_loss()));
  rec.k = folds.resolve(data.size());
  rec.k_label = folds.label();
  rec.scheduler = scheduler;
  rec.ordering = ordering;
  rec.strategy = plan.strategy;
  rec.repetition = repetition;
  rec.seed = repetition_seed(plan.seed, repetition);

  try {
    if (scheduler == Scheduler::standard) {
      const std::uint64_t needed = static_cast<std::uint64_t>(rec.n) * (rec.k - 1);
      if (needed > plan.standard_budget) {
        rec.status = RunStatus::budget_exceeded;
        rec.message = "standard CV needs " + std::to_string(needed) +
                      " point updates, budget is " + std::to_string(plan.standard_budget);
        return rec;
      }
    }
    const Dataset run_data = plan.shuffle ? dataio::shuffle_dataset(data, rec.seed) : data;
    const auto part = Partition::make(run_data.size(), rec.k);
    const Loss loss(plan.effective_loss());
    const auto factory =
        learners::make_factory(plan.learner, run_data.dim(), run_data.size(), plan.hyper);

    CvReport report;
    if (scheduler == Scheduler::tree) {
      TreeCvConfig cfg;
      cfg.strategy = plan.strategy;
      cfg.ordering = ordering;
      cfg.threads = plan.threads;
      cfg.seed = rec.seed;
      cfg.trace = plan.trace;
      report = tree_cv(factory, run_data, part, loss, cfg);
      if (plan.verify) {
        rec.verified = learners::deterministic(plan.learner)
                           ? verify_tree_run(factory, run_data, part, loss, report)
                           : "n/a";
        if (rec.verified == "no") {
          rec.status = RunStatus::error;
          rec.message = "fold scores differ from the brute-force replay";
        }
      }
    } else {
      StandardCvConfig cfg;
      cfg.ordering = ordering;
      cfg.seed = rec.seed;
      cfg.threads = plan.threads;
      report = standard_cv(factory, run_data, part, loss, cfg);
    }
    rec.estimate = report.estimate;
    rec.counters = report.counters;
    rec.wall_time = report.wall_time;
    rec.per_fold_scores = std::move(report.per_fold_scores);
    if (trace_sink)
      for (const auto& t : report.trace)
        write_csv_row(*trace_sink, {std::to_string(run_id), std::to_string(t.s),
                                    std::to_string(t.e), std::to_string(t.m),
                                    std::to_string(t.points_fed_left),
                                    std::to_string(t.points_fed_right), std::to_string(t.depth)});
  } catch (const std::exception& ex) {
    rec.status = RunStatus::error;
    rec.message = ex.what();
  }
  return rec;
}

std::vector<RunRecord> cmd_run(const ExperimentPlan& plan, const Dataset& data,
                               const RunSinks& sinks) {
  validate_plan(plan, data.size());
  if (sinks.records) {
    write_csv_row(*sinks.records, record_header());
    sinks.records->flush();
  }
  if (sinks.trace && plan.trace) write_csv_row(*sinks.trace, trace_header());

  std::vector<RunRecord> out;
  std::size_t run_id = 0;
  for (const auto& folds : plan.folds)
    for (auto scheduler : plan.schedulers)
      for (auto ordering : plan.orderings)
        for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
          auto rec = execute_run(plan, data, folds, scheduler, ordering, rep, ++run_id,
                                 plan.trace ? sinks.trace : nullptr);
          if (sinks.records) {
            write_csv_row(*sinks.records, to_row(rec));
            sinks.records->flush();
          }
          out.push_back(std::move(rec));
        }
  return out;
}

std::string records_to_json(const std::vector<RunRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["run_id"] = r.run_id;
    j["status"] = to_string(r.status);
    j["dataset"] = r.dataset;
    j["n"] = r.n;
    j["d"] = r.d;
    j["learner"] = r.learner;
    j["loss"] = r.loss;
    j["k"] = r.k;
    j["scheduler"] = to_string(r.scheduler);
    j["ordering"] = to_string(r.ordering);
    j["strategy"] = to_string(r.strategy);
    j["repetition"] = r.repetition;
    j["seed"] = r.seed;
    j["per_fold_scores"] = r.per_fold_scores;
    j["estimate"] = r.estimate;
    j["counters"] = {{"point_updates", r.counters.point_updates},
                     {"snapshots", r.counters.snapshots},
                     {"nodes_visited", r.counters.nodes_visited},
                     {"model_transfers", r.counters.model_transfers},
                     {"evaluations", r.counters.evaluations}};
    j["wall_time"] = r.wall_time;
    j["verified"] = r.verified;
    if (!r.message.empty()) j["message"] = r.message;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace treecv::harness
