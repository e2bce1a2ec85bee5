// SPDX-License-Identifier: Apache-2.0
#include "treecv/harness/stability.hpp"

#include <cmath>

#include "treecv/harness/csv.hpp"
#include "treecv/report.hpp"
#include "treecv/treecv.hpp"

namespace treecv::harness {

std::pair<double, double> batch_and_incremental_risk(const LearnerFactory& factory,
                                                     const Dataset& data, std::size_t chunks,
                                                     const Loss& loss, std::uint64_t key) {
  if (chunks < 1) throw Error(Errc::invalid_argument, "need at least one training chunk");
  const auto part = Partition::make(data.size(), chunks + 1);
  const std::size_t test = chunks;
  WorkCounters counters;

  auto batch = factory();
  CounterRng batch_rng(derive_key(key, {stream_tag::stability, 0}));
  feed(*batch, part.chunks(data, 0, chunks - 1), Ordering::randomized, batch_rng, counters);

  auto inc = factory();
  for (std::size_t j = 0; j < chunks; ++j) {
    CounterRng rng(derive_key(key, {stream_tag::stability, j}));
    feed(*inc, part.chunk(data, j), Ordering::randomized, rng, counters);
  }

  const auto held_out = part.chunk(data, test);
  return {evaluate_chunk(*batch, held_out, loss, counters),
          evaluate_chunk(*inc, held_out, loss, counters)};
}

std::vector<StabilityRow> cmd_stability(const StabilityConfig& config) {
  if (config.seeds == 0) throw Error(Errc::invalid_argument, "need at least one seed");
  if (config.sizes.empty()) throw Error(Errc::invalid_argument, "need at least one n");
  const Loss loss(config.loss.value_or(learners::default_loss(config.learner)));

  std::vector<StabilityRow> rows;
  for (std::size_t n : config.sizes) {
    if (n < config.chunks + 1)
      throw Error(Errc::invalid_argument, "n=" + std::to_string(n) + " is too small for " +
                                              std::to_string(config.chunks) + " chunks");
    auto spec = config.synth;
    spec.n = n;
    std::vector<double> gaps;
    double batch_sum = 0.0, inc_sum = 0.0;
    for (std::size_t s = 0; s < config.seeds; ++s) {
      const std::uint64_t key = derive_key(config.seed, {stream_tag::stability, n, s});
      const Dataset data = dataio::generate(spec, key);
      const auto factory = learners::make_factory(config.learner, data.dim(), n, config.hyper);
      const auto [rb, ri] = batch_and_incremental_risk(factory, data, config.chunks, loss, key);
      gaps.push_back(std::abs(rb - ri));
      batch_sum += rb;
      inc_sum += ri;
    }
    StabilityRow row;
    row.n = n;
    row.chunks = config.chunks;
    row.seeds = config.seeds;
    const double m = static_cast<double>(gaps.size());
    for (double g : gaps) row.mean_gap += g;
    row.mean_gap /= m;
    for (double g : gaps) row.std_gap += (g - row.mean_gap) * (g - row.mean_gap);
    row.std_gap = std::sqrt(row.std_gap / m);
    row.mean_batch_risk = batch_sum / m;
    row.mean_incremental_risk = inc_sum / m;
    rows.push_back(row);
  }
  return rows;
}

void write_stability_csv(std::ostream& out, const std::vector<StabilityRow>& rows) {
  write_csv_row(out, {"n", "chunks", "seeds", "mean_gap", "std_gap", "mean_batch_risk",
                      "mean_incremental_risk"});
  for (const auto& r : rows)
    write_csv_row(out, {std::to_string(r.n), std::to_string(r.chunks), std::to_string(r.seeds),
                        format_double(r.mean_gap), format_double(r.std_gap),
                        format_double(r.mean_batch_risk), format_double(r.mean_incremental_risk)});
}

}  // namespace treecv::harness
