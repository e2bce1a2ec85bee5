// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "treecv/dataio/synth.hpp"
#include "treecv/harness/bench.hpp"
#include "treecv/harness/csv.hpp"
#include "treecv/harness/report.hpp"
#include "treecv/harness/run.hpp"
#include "treecv/harness/stability.hpp"
#include "treecv/learners/mean_predictor.hpp"

using namespace treecv;
using namespace treecv::harness;

namespace {

ExperimentPlan mean_plan() {
  ExperimentPlan plan;
  plan.learner = learners::Kind::mean;
  plan.folds = parse_fold_counts("2,5");
  plan.schedulers = {Scheduler::tree, Scheduler::standard};
  plan.orderings = {Ordering::fixed};
  plan.repetitions = 3;
  plan.seed = 11;
  return plan;
}

RunRecord record(std::size_t id, Scheduler s, double estimate, RunStatus st = RunStatus::ok) {
  RunRecord r;
  r.run_id = id;
  r.status = st;
  r.dataset = "d";
  r.n = 10;
  r.learner = "mean";
  r.loss = "squared";
  r.k = 5;
  r.k_label = "5";
  r.scheduler = s;
  r.estimate = estimate;
  return r;
}

}  // namespace

TEST_CASE("csv round trip with quoting") {
  const std::vector<std::string> fields{"plain", "a,b", "say \"hi\"", "", "line\nbreak"};
  std::stringstream ss;
  write_csv_row(ss, fields);
  write_csv_row(ss, {"x"});
  std::vector<std::string> back;
  REQUIRE(read_csv_row(ss, back));
  CHECK(back == fields);
  REQUIRE(read_csv_row(ss, back));
  CHECK(back == std::vector<std::string>{"x"});
  CHECK_FALSE(read_csv_row(ss, back));
  CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("fold count parsing") {
  const auto f = parse_fold_counts("5, 10,n");
  REQUIRE(f.size() == 3);
  CHECK(f[1].resolve(100) == 10);
  CHECK(f[2].leave_one_out);
  CHECK(f[2].resolve(37) == 37);
  CHECK(f[2].label() == "n");
  CHECK_THROWS_AS(parse_fold_counts("5,x"), Error);
}

TEST_CASE("mean learner over both schedulers") {
  const Dataset data = dataio::synth_regression(40, 3, 0.1, 5);
  std::stringstream csv;
  const auto recs = cmd_run(mean_plan(), data, {&csv, nullptr});
  REQUIRE(recs.size() == 12);
  for (const auto& r : recs) CHECK(r.status == RunStatus::ok);
  // canonical order: k, scheduler, ordering, repetition
  CHECK(recs[0].k == 2);
  CHECK(recs[3].scheduler == Scheduler::standard);
  CHECK(recs[6].k == 5);
  for (std::size_t g = 0; g < 2; ++g) {
    const double tree = recs[6 * g].estimate;
    const double standard = recs[6 * g + 3].estimate;
    CHECK(std::abs(tree - standard) <= 1e-12 * std::max(1.0, std::abs(tree)));
  }
  std::size_t lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  CHECK(lines == 13);
}

TEST_CASE("records survive the csv round trip") {
  const Dataset data = dataio::synth_regression(30, 2, 0.1, 2);
  std::stringstream csv;
  const auto recs = cmd_run(mean_plan(), data, {&csv, nullptr});
  const auto back = read_records(csv);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].estimate == recs[i].estimate);
    CHECK(back[i].counters == recs[i].counters);
    CHECK(back[i].scheduler == recs[i].scheduler);
    CHECK(back[i].k_label == recs[i].k_label);
  }
}

TEST_CASE("runs are deterministic apart from timing") {
  auto plan = mean_plan();
  plan.learner = learners::Kind::pegasos;
  plan.orderings = {Ordering::fixed, Ordering::randomized};
  plan.shuffle = true;
  const Dataset data = dataio::synth_classification(60, 4, 0.1, 0.05, 3);
  const auto a = cmd_run(plan, data);
  const auto b = cmd_run(plan, data);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ra = to_row(a[i]);
    auto rb = to_row(b[i]);
    const auto wall = std::find(record_header().begin(), record_header().end(), "wall_time_s") -
                      record_header().begin();
    ra[wall] = rb[wall] = "";
    CHECK(ra == rb);
  }
}

TEST_CASE("standard LOOCV over budget is reported, not run") {
  auto plan = mean_plan();
  plan.folds = parse_fold_counts("n");
  plan.repetitions = 1;
  plan.standard_budget = 100;
  const Dataset data = dataio::synth_regression(50, 2, 0.1, 1);
  const auto recs = cmd_run(plan, data);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].status == RunStatus::ok);
  CHECK(recs[1].status == RunStatus::budget_exceeded);
  CHECK_FALSE(recs[1].message.empty());
  const auto rows = cmd_report(recs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].status == "N/A");
}

TEST_CASE("verification replays every tree fold") {
  auto plan = mean_plan();
  plan.learner = learners::Kind::lsqsgd;
  plan.schedulers = {Scheduler::tree};
  plan.orderings = {Ordering::fixed, Ordering::randomized};
  plan.repetitions = 1;
  plan.verify = true;
  const auto recs = cmd_run(plan, dataio::synth_regression(45, 3, 0.1, 8));
  for (const auto& r : recs) CHECK(r.verified == "yes");
}

TEST_CASE("invalid plans are rejected") {
  auto plan = mean_plan();
  plan.folds = parse_fold_counts("60");
  CHECK_THROWS_AS(validate_plan(plan, 50), Error);
  plan.folds = parse_fold_counts("1");
  CHECK_THROWS_AS(validate_plan(plan, 50), Error);
}

TEST_CASE("report aggregation examples") {
  SUBCASE("three repetitions") {
    const auto rows = cmd_report({record(1, Scheduler::tree, 0.1), record(2, Scheduler::tree, 0.2),
                                  record(3, Scheduler::tree, 0.3)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean == doctest::Approx(0.2));
    CHECK(rows[0].std == doctest::Approx(0.0816496580927726));
    CHECK(rows[0].count == 3);
    CHECK(rows[0].row_ids == std::vector<std::size_t>{1, 2, 3});
  }
  SUBCASE("single record has zero spread") {
    const auto rows = cmd_report({record(1, Scheduler::tree, 0.4)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].std == 0.0);
  }
  SUBCASE("schedulers are separate rows") {
    const auto rows =
        cmd_report({record(1, Scheduler::tree, 0.1), record(2, Scheduler::standard, 0.2)});
    CHECK(rows.size() == 2);
  }
  SUBCASE("errors are surfaced") {
    const auto rows = cmd_report(
        {record(1, Scheduler::tree, 0.1), record(2, Scheduler::tree, 0.0, RunStatus::error)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == "partial");
    CHECK(rows[0].mean == 0.1);
  }
  SUBCASE("no records") { CHECK_THROWS_AS(cmd_report({}), Error); }
}

TEST_CASE("stability with a single chunk has no gap") {
  const Dataset data = dataio::synth_regression(40, 2, 0.1, 4);
  const auto factory = [] { return std::make_unique<learners::MeanPredictor>(); };
  const auto [batch, incremental] =
      batch_and_incremental_risk(factory, data, 1, Loss(LossKind::squared_error), 99);
  CHECK(batch == incremental);
}

TEST_CASE("stability rows per size") {
  StabilityConfig config;
  config.synth = dataio::parse_synth_spec("classification:d=5,noise=0.1");
  config.sizes = {100, 200};
  config.seeds = 3;
  const auto rows = cmd_stability(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].n == 200);
  CHECK(rows[0].seeds == 3);
  CHECK(rows[0].mean_gap >= 0.0);
}

TEST_CASE("bench with a single grid point") {
  auto plan = mean_plan();
  plan.folds = parse_fold_counts("5");
  plan.schedulers = {Scheduler::tree};
  plan.n_grid = {30};
  plan.repetitions = 2;
  const auto rows = cmd_bench(plan, dataio::synth_regression(60, 2, 0.1, 1));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 30);
  CHECK(rows[0].repetitions == 2);
  CHECK(rows[0].median_wall_time >= 0.0);
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}
