// SPDX-License-Identifier: Apache-2.0
#include "treecv/report.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace treecv {

std::string_view to_string(Scheduler s) noexcept {
  return s == Scheduler::tree ? "tree" : "standard";
}

std::string_view to_string(Ordering o) noexcept {
  return o == Ordering::fixed ? "fixed" : "randomized";
}

Scheduler parse_scheduler(std::string_view name) {
  if (name == "tree") return Scheduler::tree;
  if (name == "standard") return Scheduler::standard;
  throw Error(Errc::invalid_argument, "unknown scheduler '" + std::string(name) + "'");
}

Ordering parse_ordering(std::string_view name) {
  if (name == "fixed") return Ordering::fixed;
  if (name == "randomized" || name == "random") return Ordering::randomized;
  throw Error(Errc::invalid_argument, "unknown ordering '" + std::string(name) + "'");
}

namespace {

bool bit_equal(double a, double b) noexcept {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

bool same_result(const CvReport& a, const CvReport& b) noexcept {
  if (a.per_fold_scores.size() != b.per_fold_scores.size()) return false;
  for (std::size_t i = 0; i < a.per_fold_scores.size(); ++i)
    if (!bit_equal(a.per_fold_scores[i], b.per_fold_scores[i])) return false;
  return bit_equal(a.estimate, b.estimate) && a.counters == b.counters &&
         a.scheduler == b.scheduler && a.ordering == b.ordering && a.seed == b.seed &&
         a.trace == b.trace;
}

double mean_of_folds(std::span<const double> fold_scores) noexcept {
  if (fold_scores.empty()) return 0.0;
  KahanSum sum;
  for (double s : fold_scores) sum.add(s);
  return sum.value() / static_cast<double>(fold_scores.size());
}

double evaluate_chunk(const IncrementalLearner& model, std::span<const DataPoint> chunk,
                      const Loss& loss, WorkCounters& counters) {
  if (chunk.empty()) throw Error(Errc::invalid_chunk, "cannot evaluate on an empty chunk");
  KahanSum sum;
  for (const auto& p : chunk) sum.add(loss(model.predict(p.x), p.x, p.y));
  counters.evaluations += chunk.size();
  return sum.value() / static_cast<double>(chunk.size());
}

}  // namespace treecv
