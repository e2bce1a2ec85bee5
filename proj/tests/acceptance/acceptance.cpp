// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "treecv/baseline.hpp"
#include "treecv/dataio/sparse_text.hpp"
#include "treecv/dataio/synth.hpp"
#include "treecv/harness/run.hpp"
#include "treecv/harness/stability.hpp"
#include "treecv/learners/factory.hpp"
#include "treecv/learners/kmeans.hpp"
#include "treecv/learners/lsqsgd.hpp"
#include "treecv/learners/mean_predictor.hpp"
#include "treecv/learners/pegasos.hpp"
#include "treecv/treecv.hpp"

using namespace treecv;

namespace {

struct Outcome_ {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

LearnerFactory mean_factory() {
  return [] { return std::make_unique<learners::MeanPredictor>(); };
}

std::size_t ceil_log2(std::size_t k) { return std::bit_width(k - 1); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// 1. Mean predictor: tree and standard agree fold by fold.
Outcome_ oracle_equivalence() {
  Outcome_ out;
  CounterRng rng(derive_key(1, 1));
  const Loss sq(LossKind::squared_error);
  double worst = 0;
  std::size_t runs = 0;
  for (std::size_t ds = 0; ds < 50; ++ds) {
    const std::size_t n = 7 + rng.below(194);
    const auto data = dataio::synth_regression(n, 1 + rng.below(5), 0.2, rng.next_u64());
    for (std::size_t k : {std::size_t{2}, std::size_t{3}, std::size_t{5}, std::size_t{7}, n}) {
      const auto part = Partition::make(n, k);
      const auto t = tree_cv(mean_factory(), data, part, sq);
      const auto s = standard_cv(mean_factory(), data, part, sq);
      ++runs;
      for (std::size_t i = 0; i < k; ++i) {
        const double a = t.per_fold_scores[i], b = s.per_fold_scores[i];
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        worst = std::max(worst, std::abs(a - b) / scale);
      }
    }
  }
  if (worst > 1e-12) out.fail(fmt("worst relative fold difference %.3g", worst));
  else out.detail = fmt("%zu runs, worst relative fold difference %.3g", runs, worst);
  return out;
}

// 2. Deterministic learners: tree folds equal the oracle replay of the
// tree-induced order bit for bit.
Outcome_ trace_equivalence() {
  Outcome_ out;
  CounterRng rng(derive_key(2, 1));
  std::size_t folds = 0;
  for (auto kind : {learners::Kind::pegasos, learners::Kind::lsqsgd}) {
    for (std::size_t k : {4, 8, 16}) {
      for (int rep = 0; rep < 4; ++rep) {
        const std::size_t n = k + rng.below(501 - k);
        const std::size_t d = 1 + rng.below(10);
        const auto data = kind == learners::Kind::pegasos
                              ? dataio::synth_classification(n, d, 0.1, 0.1, rng.next_u64())
                              : dataio::synth_regression(n, d, 0.1, rng.next_u64());
        learners::Hyperparameters hp;
        hp.lambda = 0.01;
        const auto factory = learners::make_factory(kind, d, n, hp);
        const Loss loss(learners::default_loss(kind));
        const auto part = Partition::make(n, k);
        TreeCvConfig cfg;
        cfg.seed = rng.next_u64();
        const auto tree = tree_cv(factory, data, part, loss, cfg);
        std::vector<std::vector<std::size_t>> orders;
        for (std::size_t i = 0; i < k; ++i) orders.push_back(tree_induced_order(part, i));
        const auto oracle = brute_force_oracle(factory, data, part, loss, orders, cfg.seed);
        for (std::size_t i = 0; i < k; ++i, ++folds) {
          if (std::bit_cast<std::uint64_t>(tree.per_fold_scores[i]) !=
              std::bit_cast<std::uint64_t>(oracle.per_fold_scores[i]))
            out.fail(fmt("%s n=%zu k=%zu fold %zu: %.17g vs %.17g",
                         std::string(learners::to_string(kind)).c_str(), n, k, i,
                         tree.per_fold_scores[i], oracle.per_fold_scores[i]));
        }
      }
    }
  }
  if (out.pass) out.detail = fmt("%zu folds bit-equal", folds);
  return out;
}

// 3. Recursion shape.
Outcome_ node_counts() {
  Outcome_ out;
  const Loss sq(LossKind::squared_error);
  const auto data = dataio::synth_regression(200, 2, 0.1, 3);
  for (auto strategy : {Strategy::copy, Strategy::save_revert}) {
    for (unsigned threads : {1u, 4u}) {
      for (std::size_t k = 2; k <= 64; ++k) {
        TreeCvConfig cfg;
        cfg.strategy = strategy;
        cfg.threads = threads;
        const auto r = tree_cv(mean_factory(), data, Partition::make(data.size(), k), sq, cfg);
        if (r.counters.nodes_visited != 2 * k - 1 || r.counters.snapshots != k - 1)
          out.fail(fmt("k=%zu: nodes %llu snapshots %llu", k,
                       static_cast<unsigned long long>(r.counters.nodes_visited),
                       static_cast<unsigned long long>(r.counters.snapshots)));
      }
    }
  }
  if (out.pass) out.detail = "k=2..64, both strategies, 1 and 4 threads";
  return out;
}

// 4. Counted point updates.
Outcome_ work_bound() {
  Outcome_ out;
  const Loss sq(LossKind::squared_error);
  std::size_t checked = 0;
  for (std::size_t n : {64, 100, 257, 500, 1000}) {
    const auto data = dataio::synth_regression(n, 1, 0.1, n);
    for (std::size_t k = 2; k <= std::min<std::size_t>(n, 128); ++k) {
      const auto r = tree_cv(mean_factory(), data, Partition::make(n, k), sq);
      ++checked;
      if (r.counters.point_updates > n * ceil_log2(k))
        out.fail(fmt("n=%zu k=%zu: %llu > n*ceil(log2 k)", n, k,
                     static_cast<unsigned long long>(r.counters.point_updates)));
    }
    const auto loo = loocv(mean_factory(), data, sq);
    ++checked;
    if (loo.counters.point_updates > n * ceil_log2(n)) out.fail(fmt("LOOCV n=%zu over bound", n));
  }
  for (std::size_t k : {2, 4, 8, 16}) {
    for (std::size_t b : {1, 3, 10, 25}) {
      const std::size_t n = b * k;
      const auto data = dataio::synth_regression(n, 1, 0.1, n + k);
      const auto part = Partition::make(n, k);
      const auto t = tree_cv(mean_factory(), data, part, sq);
      const auto s = standard_cv(mean_factory(), data, part, sq);
      ++checked;
      if (t.counters.point_updates != n * ceil_log2(k))
        out.fail(fmt("n=%zu k=%zu: tree %llu != n log2 k", n, k,
                     static_cast<unsigned long long>(t.counters.point_updates)));
      if (s.counters.point_updates != n * (k - 1))
        out.fail(fmt("n=%zu k=%zu: standard %llu != n(k-1)", n, k,
                     static_cast<unsigned long long>(s.counters.point_updates)));
    }
  }
  if (out.pass) out.detail = fmt("%zu (n, k) pairs", checked);
  return out;
}

// 5. Wall time of LOOCV.
Outcome_ measured_speedup() {
  Outcome_ out;
  const std::size_t n = 2000, d = 20;
  const auto data = dataio::synth_classification(n, d, 0.1, 0.1, 5);
  const auto factory = learners::make_factory(learners::Kind::pegasos, d, n, {});
  const Loss loss(LossKind::misclassification);
  const auto part = Partition::make(n, n);
  auto t0 = std::chrono::steady_clock::now();
  const auto tree = tree_cv(factory, data, part, loss);
  const double tree_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto standard = standard_cv(factory, data, part, loss);
  const double standard_s = seconds_since(t0);
  out.detail = fmt("tree %.4fs, standard %.4fs, ratio %.1fx", tree_s, standard_s,
                   standard_s / tree_s);
  if (tree_s * 10 > standard_s) out.fail(out.detail);
  return out;
}

// 6. Stability gap shrinks with n.
Outcome_ stability_gap() {
  Outcome_ out;
  harness::StabilityConfig cfg;
  cfg.learner = learners::Kind::pegasos;
  cfg.synth = dataio::parse_synth_spec("classification:d=20,margin=0.1,noise=0.1");
  cfg.sizes = {500, 2000, 8000};
  cfg.seeds = 50;
  cfg.seed = 6;
  const auto rows = harness::cmd_stability(cfg);
  out.detail = fmt("mean gap %.4f (n=500), %.4f (n=2000), %.4f (n=8000)", rows[0].mean_gap,
                   rows[1].mean_gap, rows[2].mean_gap);
  if (!(rows[2].mean_gap < rows[0].mean_gap)) out.fail(out.detail);
  return out;
}

// 7. Randomized tree and standard estimates agree within sampling error.
// Every repetition draws a fresh partition, so both schedulers average over
// the same distribution of training orders.
Outcome_ estimate_agreement() {
  Outcome_ out;
  harness::ExperimentPlan plan;
  plan.source.synth = dataio::parse_synth_spec("classification:n=10000,d=20,margin=0.1,noise=0.1");
  plan.learner = learners::Kind::pegasos;
  plan.folds = harness::parse_fold_counts("5,10");
  plan.schedulers = {Scheduler::tree, Scheduler::standard};
  plan.orderings = {Ordering::randomized};
  plan.repetitions = 20;
  plan.shuffle = true;
  plan.seed = 7;
  const auto data = harness::load_dataset(plan.source, plan.seed);
  const auto recs = harness::cmd_run(plan, data);
  for (std::size_t k : {5, 10}) {
    std::vector<double> tree, standard;
    for (const auto& r : recs) {
      if (r.k != k) continue;
      if (r.status != harness::RunStatus::ok) out.fail("run " + std::to_string(r.run_id) + " failed");
      (r.scheduler == Scheduler::tree ? tree : standard).push_back(r.estimate);
    }
    const double diff = std::abs(mean(tree) - mean(standard));
    const double se = std::sqrt(sample_var(tree) / tree.size() + sample_var(standard) / standard.size());
    const auto line = fmt("k=%zu |diff| %.5f vs 3se %.5f", k, diff, 3 * se);
    out.detail += (out.detail.empty() ? "" : "; ") + line;
    if (diff > 3 * se) out.fail(line);
  }
  return out;
}

// 8. Learner hand examples.
Outcome_ learner_examples() {
  Outcome_ out;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) out.fail(what);
  };
  auto scalar = [](const Prediction& p) { return std::get<double>(p); };
  {
    learners::Pegasos p(1, 1.0);
    expect(scalar(p.predict(std::vector<double>{1.0})) == 1.0, "PEGASOS w=0 tie -> +1");
    p.update(DataPoint{{1.0}, BinaryLabel(1)});
    expect(p.weights() == std::vector<double>{1.0}, "PEGASOS step 1 -> w=[1]");
    p.update(DataPoint{{1.0}, BinaryLabel(1)});
    expect(p.weights() == std::vector<double>{0.5}, "PEGASOS step 2 -> w=[0.5]");
    expect(scalar(p.predict(std::vector<double>{2.0})) == 1.0, "PEGASOS w=[0.5], x=[2] -> +1");
    p.update(DataPoint{{0.0}, BinaryLabel(-1)});
    expect(p.weights() == std::vector<double>{0.5 * (1.0 - 1.0 / 3.0)},
           "PEGASOS zero vector only shrinks");
  }
  {
    learners::LsqSgd l(1, 0.5);
    l.update(DataPoint{{1.0}, 1.0});
    expect(l.current() == std::vector<double>{1.0}, "LSQSGD w=0, x=[1], y=1 -> w=[1]");
    std::vector<double> v{3.0, 4.0};
    learners::project_unit_ball(v);
    expect(std::abs(v[0] - 0.6) <= 1e-12 && std::abs(v[1] - 0.8) <= 1e-12,
           "projection [3,4] -> [0.6,0.8]");
    const auto avg = l.average();
    l.update(DataPoint{{1.0}, 1.0});  // zero residual
    expect(l.current() == std::vector<double>{1.0}, "LSQSGD zero residual leaves w");
    expect(l.steps() == 2 && l.average() == avg, "LSQSGD average still updated");
  }
  {
    learners::OnlineKMeans km(1, 1);
    km.update(DataPoint{{2.0}, NoLabel{}});
    expect(km.center(0)[0] == 2.0, "k-means K=1 first center 2");
    km.update(DataPoint{{4.0}, NoLabel{}});
    expect(km.center(0)[0] == 3.0, "k-means K=1 running mean 3");
    learners::OnlineKMeans two(1, 2);
    two.update(DataPoint{{0.0}, NoLabel{}});
    two.update(DataPoint{{10.0}, NoLabel{}});
    const Loss q(LossKind::quantization);
    const std::vector<double> x{4.0};
    const auto pred = two.predict(x);
    expect(std::get<std::vector<double>>(pred) == std::vector<double>{0.0},
           "k-means x=[4] -> center [0]");
    expect(q(pred, x, NoLabel{}) == 16.0, "k-means quantization loss 16");
    two.update(DataPoint{{1.0}, NoLabel{}});
    expect(two.center(0)[0] == 0.5, "k-means nearest center -> [0.5]");
    two.update(DataPoint{{10.0}, NoLabel{}});
    expect(two.center(1)[0] == 10.0 && two.counts()[1] == 2, "k-means point on a center");
  }
  {
    learners::MeanPredictor m;
    bool threw = false;
    try {
      (void)m.predict(std::vector<double>{});
    } catch (const Error& e) {
      threw = e.code() == Errc::untrained_model;
    }
    expect(threw, "mean predictor untrained");
  }
  if (out.pass) out.detail = "PEGASOS, LSQSGD, k-means and mean predictor examples";
  return out;
}

// 9. Sequential and fork-join runs are identical.
Outcome_ determinism() {
  Outcome_ out;
  std::size_t runs = 0;
  struct Case {
    learners::Kind kind;
    Dataset data;
  };
  const std::vector<Case> cases{
      {learners::Kind::pegasos, dataio::synth_classification(700, 6, 0.1, 0.1, 9)},
      {learners::Kind::lsqsgd, dataio::synth_regression(700, 6, 0.1, 9)},
      {learners::Kind::kmeans, dataio::synth_blobs(700, 3, 3, 0.5, 9)},
      {learners::Kind::mean, dataio::synth_regression(700, 2, 0.1, 10)},
  };
  for (const auto& c : cases) {
    learners::Hyperparameters hp;
    hp.clusters = 3;
    const auto factory = learners::make_factory(c.kind, c.data.dim(), c.data.size(), hp);
    const Loss loss(learners::default_loss(c.kind));
    for (std::size_t k : {std::size_t{7}, std::size_t{64}, c.data.size()}) {
      const auto part = Partition::make(c.data.size(), k);
      for (auto ordering : {Ordering::fixed, Ordering::randomized}) {
        for (auto strategy : {Strategy::copy, Strategy::save_revert}) {
          TreeCvConfig cfg{strategy, ordering, 1, 4242, true};
          const auto seq = tree_cv(factory, c.data, part, loss, cfg);
          const auto again = tree_cv(factory, c.data, part, loss, cfg);
          cfg.threads = 8;
          const auto par = tree_cv(factory, c.data, part, loss, cfg);
          runs += 3;
          if (!same_result(seq, again) || !same_result(seq, par))
            out.fail(fmt("tree %s k=%zu %s %s differs",
                         std::string(learners::to_string(c.kind)).c_str(), k,
                         std::string(to_string(ordering)).c_str(),
                         std::string(to_string(strategy)).c_str()));
        }
        if (k == c.data.size()) continue;
        StandardCvConfig scfg{ordering, 4242, 1};
        const auto seq = standard_cv(factory, c.data, part, loss, scfg);
        scfg.threads = 8;
        const auto par = standard_cv(factory, c.data, part, loss, scfg);
        runs += 2;
        if (!same_result(seq, par))
          out.fail(fmt("standard %s k=%zu differs",
                       std::string(learners::to_string(c.kind)).c_str(), k));
      }
    }
  }
  if (out.pass) out.detail = fmt("%zu runs bit-identical", runs);
  return out;
}

Dataset random_dataset(CounterRng& rng) {
  const std::size_t n = 1 + rng.below(40);
  const std::size_t d = 1 + rng.below(30);
  const auto label_kind = rng.below(3);  // binary, real, none
  std::vector<DataPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(d, 0.0);
    for (auto& v : x) {
      if (rng.uniform01() < 0.6) continue;
      switch (rng.below(3)) {
        case 0: v = static_cast<double>(static_cast<int>(rng.below(21)) - 10); break;
        case 1: v = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(41)) - 20); break;
        default: v = std::bit_cast<double>(rng.next_u64() & 0x7FEFFFFFFFFFFFFFull); break;
      }
    }
    Outcome y = NoLabel{};
    if (label_kind == 0) y = BinaryLabel(rng.below(2) ? 1 : -1);
    if (label_kind == 1) y = rng.normal() * 100.0;
    pts.push_back({std::move(x), y});
  }
  return Dataset(std::move(pts), d);
}

bool same_data(const Dataset& a, const Dataset& b) {
  if (a.size() != b.size() || a.dim() != b.dim() || a.labeled() != b.labeled()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x) return false;
    if (a.labeled() && real_outcome(a[i].y) != real_outcome(b[i].y)) return false;
  }
  return true;
}

// 10. Sparse text round trip and parse errors.
Outcome_ parser_round_trip() {
  Outcome_ out;
  CounterRng rng(derive_key(10, 1));
  for (int i = 0; i < 1000; ++i) {
    const auto data = random_dataset(rng);
    const auto text = dataio::to_sparse_text(data);
    const auto back = dataio::parse_sparse_text(text, data.dim());
    if (!same_data(data, back)) out.fail(fmt("dataset %d differs after round trip", i));
  }
  struct Bad {
    const char* text;
    std::size_t line;
    const char* what;
  };
  for (const auto& bad : {Bad{"1 1:1\n-1 2:1\n1 3:1 2:1\n", 3, "non-monotone index"},
                          Bad{"# header\n1 0:1\n", 2, "index < 1"},
                          Bad{"1 1:1\n\n1 2:abc\n", 3, "unparsable number"}}) {
    try {
      (void)dataio::parse_sparse_text(std::string(bad.text));
      out.fail(std::string(bad.what) + " accepted");
    } catch (const ParseError& e) {
      if (e.code() != Errc::parse_error || e.line() != bad.line)
        out.fail(fmt("%s reported at line %zu", bad.what, e.line()));
    }
  }
  if (out.pass) out.detail = "1000 datasets; 3 error cases at the right lines";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome_()>>> criteria{
      {"oracle equivalence (mean predictor)", oracle_equivalence},
      {"trace equivalence (PEGASOS, LSQSGD)", trace_equivalence},
      {"node and snapshot counts", node_counts},
      {"work bound", work_bound},
      {"measured LOOCV speedup", measured_speedup},
      {"stability gap shrinks", stability_gap},
      {"estimate agreement under randomized ordering", estimate_agreement},
      {"learner hand examples", learner_examples},
      {"determinism across threads", determinism},
      {"sparse text round trip", parser_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome_ r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    failures += !r.pass;
    std::printf("%s %zu %s: %s [%.2fs]\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                r.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
