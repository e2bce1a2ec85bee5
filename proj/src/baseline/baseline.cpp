// SPDX-License-Identifier: Apache-2.0
#include "treecv/baseline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "treecv/treecv.hpp"

namespace treecv {

namespace {

using FoldJob = std::function<WorkCounters(std::size_t)>;

// Runs job(i) for every fold, on up to `threads` workers. Each fold writes
// only its own slot, and counters are summed in fold order afterwards.
WorkCounters for_each_fold(std::size_t folds, unsigned threads, const FoldJob& job) {
  std::vector<WorkCounters> per_fold(folds);
  if (threads <= 1 || folds < 2) {
    for (std::size_t i = 0; i < folds; ++i) per_fold[i] = job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (std::size_t i = next++; i < folds; i = next++) {
        try {
          per_fold[i] = job(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    const auto n = std::min<std::size_t>(threads, folds);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  WorkCounters total;
  for (const auto& c : per_fold) total += c;
  return total;
}

void check_inputs(const Dataset& data, const Partition& part) {
  if (part.total() != data.size())
    throw Error(Errc::invalid_argument, "partition does not match dataset size");
}

std::unique_ptr<IncrementalLearner> fresh_model(const LearnerFactory& factory,
                                                std::uint64_t seed, std::size_t fold) {
  auto model = factory();
  if (!model) throw Error(Errc::invalid_argument, "learner factory returned null");
  model->reseed(fold_stream_key(seed, fold));
  return model;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void feed_fixed(IncrementalLearner& model, std::span<const DataPoint> points, WorkCounters& c) {
  model.update(points);
  c.point_updates += points.size();
}

Error annotate(const Error& ex, std::size_t fold) {
  return Error(ex.code(), std::string(ex.what()) + " [standard fold " + std::to_string(fold) + "]");
}

}  // namespace

CvReport standard_cv(const LearnerFactory& factory, const Dataset& data, const Partition& part,
                     const Loss& loss, const StandardCvConfig& config) {
  check_inputs(data, part);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t k = part.folds();

  CvReport report;
  report.scheduler = Scheduler::standard;
  report.ordering = config.ordering;
  report.seed = config.seed;
  report.per_fold_scores.assign(k, 0.0);

  report.counters = for_each_fold(k, config.threads, [&](std::size_t i) {
    WorkCounters c;
    auto model = fresh_model(factory, config.seed, i);
    try {
      if (config.ordering == Ordering::fixed) {
        if (i > 0) feed_fixed(*model, part.chunks(data, 0, i - 1), c);
        if (i + 1 < k) feed_fixed(*model, part.chunks(data, i + 1, k - 1), c);
      } else {
        std::vector<std::size_t> idx;
        idx.reserve(data.size() - part.chunk_size(i));
        for (std::size_t j = 0; j < data.size(); ++j)
          if (j < part.chunk_begin(i) || j >= part.chunk_end(i)) idx.push_back(j);
        CounterRng rng(standard_order_key(config.seed, i));
        shuffle_in_place(std::span<std::size_t>(idx), rng);
        for (std::size_t j : idx) model->update(data[j]);
        c.point_updates += idx.size();
      }
    } catch (const Error& ex) {
      throw annotate(ex, i);
    }
    c.model_transfers += k - 1;
    report.per_fold_scores[i] = evaluate_chunk(*model, part.chunk(data, i), loss, c);
    return c;
  });

  report.estimate = mean_of_folds(report.per_fold_scores);
  report.wall_time = seconds_since(start);
  return report;
}

CvReport brute_force_oracle(const LearnerFactory& factory, const Dataset& data,
                            const Partition& part, const Loss& loss,
                            const std::vector<std::vector<std::size_t>>& orders,
                            std::uint64_t seed) {
  check_inputs(data, part);
  const std::size_t k = part.folds();
  if (orders.size() != k)
    throw Error(Errc::invalid_order, "expected " + std::to_string(k) + " feeding orders, got " +
                                         std::to_string(orders.size()));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> sorted = orders[i];
    std::ranges::sort(sorted);
    std::vector<std::size_t> expected;
    for (std::size_t j = 0; j < data.size(); ++j)
      if (j < part.chunk_begin(i) || j >= part.chunk_end(i)) expected.push_back(j);
    if (sorted != expected)
      throw Error(Errc::invalid_order, "order for fold " + std::to_string(i) +
                                           " is not a permutation of the training indices");
  }

  const auto start = std::chrono::steady_clock::now();
  CvReport report;
  report.scheduler = Scheduler::standard;
  report.seed = seed;
  report.per_fold_scores.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    auto model = fresh_model(factory, seed, i);
    try {
      for (std::size_t j : orders[i]) model->update(data[j]);
    } catch (const Error& ex) {
      throw annotate(ex, i);
    }
    report.counters.point_updates += orders[i].size();
    report.counters.model_transfers += k - 1;
    report.per_fold_scores[i] = evaluate_chunk(*model, part.chunk(data, i), loss, report.counters);
  }
  report.estimate = mean_of_folds(report.per_fold_scores);
  report.wall_time = seconds_since(start);
  return report;
}

std::vector<std::size_t> tree_induced_order(const Partition& part, std::size_t fold,
                                            Ordering ordering, std::uint64_t seed) {
  const std::size_t k = part.folds();
  if (fold >= k) throw Error(Errc::invalid_chunk, "fold index out of range");
  std::vector<std::size_t> order;
  order.reserve(part.total() - part.chunk_size(fold));
  auto append = [&](std::size_t first, std::size_t last) {
    const std::size_t lo = part.chunk_begin(first);
    const std::size_t hi = part.chunk_end(last);
    const std::size_t base = order.size();
    for (std::size_t j = lo; j < hi; ++j) order.push_back(j);
    if (ordering == Ordering::randomized && hi - lo > 1) {
      CounterRng rng(feed_stream_key(seed, first, last));
      const auto perm = random_permutation(hi - lo, rng);
      for (std::size_t j = 0; j < perm.size(); ++j) order[base + j] = lo + perm[j];
    }
  };
  std::size_t s = 0, e = k - 1;
  while (s != e) {
    const std::size_t m = (s + e) / 2;
    if (fold <= m) {
      append(m + 1, e);
      e = m;
    } else {
      append(s, m);
      s = m + 1;
    }
  }
  return order;
}

}  // namespace treecv
