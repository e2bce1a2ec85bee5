// SPDX-License-Identifier: Apache-2.0
//
// treecv: k-fold cross-validation experiments for incremental learners.
//
//   treecv run       --synth classification:n=2000,d=20 --learner pegasos --k 5,10,n ...
//   treecv bench     --synth ... --n-grid 500,1000,2000 --k 10,n --scheduler both
//   treecv stability --learner pegasos --synth classification:d=20 --n-list 500,2000,8000
//   treecv report    records.csv --table
//
// Exit status: 0 on success, 2 on invalid input, 1 when a run fails.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "treecv/harness/bench.hpp"
#include "treecv/harness/report.hpp"
#include "treecv/harness/run.hpp"
#include "treecv/harness/stability.hpp"

using namespace treecv;
using namespace treecv::harness;

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kValidationError = 2;

struct CommonOptions {
  std::string data;
  std::string synth;
  std::vector<std::string> transforms;
  std::string learner = "pegasos";
  std::string loss;
  std::string folds = "10";
  std::string scheduler = "tree";
  std::string ordering = "fixed";
  std::string strategy = "copy";
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool trace = false;
  bool verify = false;
  bool shuffle = false;
  std::string out;
  std::string json;
  double lambda = 1e-4;
  double alpha = 0.0;
  std::size_t clusters = 2;
  std::uint64_t budget = 50'000'000;
  std::string n_grid;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  auto* src = cmd->add_option_group("source");
  src->add_option("--data", o.data, "Dataset in sparse 'label idx:val' text format");
  src->add_option("--synth", o.synth,
                  "Synthetic data, e.g. classification:n=2000,d=20,margin=0.1,noise=0.05");
  src->require_option(1);
  cmd->add_option("--transform", o.transforms,
                  "unit-variance | targets-01 | binarize=<class>; repeatable, applied in order");
  cmd->add_option("--learner", o.learner, "pegasos | lsqsgd | kmeans | mean")
      ->check(CLI::IsMember({"pegasos", "lsqsgd", "kmeans", "mean"}));
  cmd->add_option("--loss", o.loss, "zeroone | squared | quantization (default: per learner)")
      ->check(CLI::IsMember({"zeroone", "squared", "quantization"}));
  cmd->add_option("--k", o.folds, "Fold counts, comma separated; 'n' means leave-one-out");
  cmd->add_option("--scheduler", o.scheduler, "tree | standard | both")
      ->check(CLI::IsMember({"tree", "standard", "both"}));
  cmd->add_option("--ordering", o.ordering, "fixed | randomized | both")
      ->check(CLI::IsMember({"fixed", "randomized", "both"}));
  cmd->add_option("--strategy", o.strategy, "copy | save-revert")
      ->check(CLI::IsMember({"copy", "save-revert"}));
  cmd->add_option("--reps", o.reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--threads", o.threads, "Worker threads per run")->check(CLI::PositiveNumber);
  cmd->add_flag("--shuffle", o.shuffle, "Reshuffle the dataset for every repetition");
  cmd->add_flag("--trace", o.trace, "Write recursion nodes to <out>.trace.csv");
  cmd->add_flag("--verify", o.verify, "Replay every tree fold with the brute-force oracle");
  cmd->add_option("--out", o.out, "Output CSV (default: stdout)");
  cmd->add_option("--lambda", o.lambda, "PEGASOS regularization");
  cmd->add_option("--alpha", o.alpha, "LSQSGD step size (default: n^-1/2)");
  cmd->add_option("--clusters", o.clusters, "k-means cluster count");
  cmd->add_option("--budget", o.budget, "Skip standard runs above this many point updates");
}

template <typename T>
std::vector<T> expand(const std::string& choice, T first, T second, T (*parse)(std::string_view)) {
  if (choice == "both") return {first, second};
  return {parse(choice)};
}

ExperimentPlan make_plan(const CommonOptions& o) {
  ExperimentPlan plan;
  if (!o.data.empty()) plan.source.path = o.data;
  if (!o.synth.empty()) plan.source.synth = dataio::parse_synth_spec(o.synth);
  plan.source.transforms = o.transforms;
  plan.learner = learners::parse_kind(o.learner);
  plan.hyper.lambda = o.lambda;
  if (o.alpha > 0) plan.hyper.step_size = o.alpha;
  plan.hyper.clusters = o.clusters;
  if (!o.loss.empty()) plan.loss = parse_loss_kind(o.loss);
  plan.folds = parse_fold_counts(o.folds);
  plan.schedulers = expand(o.scheduler, Scheduler::tree, Scheduler::standard, parse_scheduler);
  plan.orderings = expand(o.ordering, Ordering::fixed, Ordering::randomized, parse_ordering);
  plan.strategy = parse_strategy(o.strategy);
  plan.repetitions = o.reps;
  plan.seed = o.seed;
  plan.threads = o.threads;
  plan.shuffle = o.shuffle;
  plan.trace = o.trace;
  plan.verify = o.verify;
  plan.standard_budget = o.budget;
  if (!o.n_grid.empty()) plan.n_grid = parse_size_list(o.n_grid);
  return plan;
}

/// stdout unless a path is given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int do_run(const CommonOptions& o) {
  const auto plan = make_plan(o);
  const Dataset data = load_dataset(plan.source, plan.seed);
  validate_plan(plan, data.size());
  Output out(o.out);
  std::unique_ptr<std::ofstream> trace;
  if (plan.trace) trace = std::make_unique<std::ofstream>((o.out.empty() ? "treecv" : o.out) + ".trace.csv");
  const auto records = cmd_run(plan, data, {&out.stream(), trace.get()});
  if (!o.json.empty()) {
    std::ofstream js(o.json);
    js << records_to_json(records) << '\n';
  }
  for (const auto& r : records) {
    if (r.status == RunStatus::error) {
      std::cerr << "treecv: run " << r.run_id << " failed: " << r.message << '\n';
      return kRuntimeFailure;
    }
  }
  return 0;
}

int do_bench(const CommonOptions& o) {
  auto plan = make_plan(o);
  if (plan.n_grid.empty()) throw Error(Errc::invalid_argument, "bench needs --n-grid");
  if (plan.source.synth) plan.source.synth->n = std::max(plan.source.synth->n, plan.n_grid.back());
  const Dataset data = load_dataset(plan.source, plan.seed);
  for (std::size_t n : plan.n_grid) validate_plan(plan, n);
  const auto rows = cmd_bench(plan, data);
  Output out(o.out);
  write_bench_csv(out.stream(), rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-fold cross-validation for incremental learners"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "Run every cell of an experiment plan, one CSV row each");
  add_common(run, run_opts);
  run->add_option("--json", run_opts.json, "Also write the full reports as JSON");

  CommonOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Median runtimes over an n-grid");
  add_common(bench, bench_opts);
  bench->add_option("--n-grid", bench_opts.n_grid, "Ascending dataset sizes")->required();

  StabilityConfig stab;
  std::string stab_learner = "pegasos", stab_synth = "classification:d=20,noise=0.1",
              stab_sizes = "500,2000,8000", stab_out, stab_loss;
  double stab_alpha = 0.0;
  auto* stability = app.add_subcommand("stability", "Batch vs incremental test-risk gap");
  stability->add_option("--learner", stab_learner)
      ->check(CLI::IsMember({"pegasos", "lsqsgd", "kmeans", "mean"}));
  stability->add_option("--synth", stab_synth, "Synthetic spec; n comes from --n-list");
  stability->add_option("--n-list", stab_sizes, "Dataset sizes");
  stability->add_option("--seeds", stab.seeds, "Datasets per size")->check(CLI::PositiveNumber);
  stability->add_option("--chunks", stab.chunks, "Training chunks l")->check(CLI::PositiveNumber);
  stability->add_option("--seed", stab.seed, "Base seed");
  stability->add_option("--lambda", stab.hyper.lambda, "PEGASOS regularization");
  stability->add_option("--alpha", stab_alpha, "LSQSGD step size (default: n^-1/2)");
  stability->add_option("--clusters", stab.hyper.clusters, "k-means cluster count");
  stability->add_option("--loss", stab_loss)
      ->check(CLI::IsMember({"zeroone", "squared", "quantization"}));
  stability->add_option("--out", stab_out, "Output CSV (default: stdout)");

  std::string report_in, report_out;
  bool report_table = false;
  double report_scale = 1.0;
  auto* report = app.add_subcommand("report", "Mean and population std per plan cell");
  report->add_option("records", report_in, "CSV written by 'run'")->required();
  report->add_option("--out", report_out, "Output file (default: stdout)");
  report->add_flag("--table", report_table, "Render a fold-count x scheduler text table");
  report->add_option("--scale", report_scale, "Multiply estimates in the table (e.g. 100)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationError;
  }

  try {
    if (*run) return do_run(run_opts);
    if (*bench) return do_bench(bench_opts);
    if (*stability) {
      stab.learner = learners::parse_kind(stab_learner);
      stab.synth = dataio::parse_synth_spec(stab_synth);
      stab.sizes = parse_size_list(stab_sizes);
      if (stab_alpha > 0) stab.hyper.step_size = stab_alpha;
      if (!stab_loss.empty()) stab.loss = parse_loss_kind(stab_loss);
      const auto rows = cmd_stability(stab);
      Output out(stab_out);
      write_stability_csv(out.stream(), rows);
      return 0;
    }
    if (*report) {
      std::ifstream in(report_in);
      if (!in) throw Error(Errc::invalid_argument, "cannot open '" + report_in + "'");
      const auto rows = cmd_report(read_records(in));
      Output out(report_out);
      if (report_table) write_report_table(out.stream(), rows, report_scale);
      else write_report_csv(out.stream(), rows);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "treecv: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == Errc::inconsistent_state ? kRuntimeFailure : kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "treecv: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return 0;
}
