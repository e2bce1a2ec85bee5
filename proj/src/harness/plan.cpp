// SPDX-License-Identifier: Apache-2.0
#include "treecv/harness/plan.hpp"

#include <charconv>
#include <sstream>

#include "treecv/dataio/sparse_text.hpp"
#include "treecv/dataio/transform.hpp"
#include "treecv/harness/csv.hpp"

namespace treecv::harness {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
  }
  return out;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(Errc::invalid_argument, std::string("bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace

std::vector<FoldCount> parse_fold_counts(const std::string& text) {
  std::vector<FoldCount> out;
  for (const auto& item : split(text, ',')) {
    if (item == "n") out.push_back({0, true});
    else out.push_back({parse_number<std::size_t>(item, "fold count"), false});
  }
  if (out.empty()) throw Error(Errc::invalid_argument, "empty fold-count list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_number<std::size_t>(item, "size"));
  if (out.empty()) throw Error(Errc::invalid_argument, "empty size list");
  return out;
}

std::string DataSource::describe() const {
  std::string out = path ? *path : synth ? dataio::to_string(*synth) : std::string("?");
  for (const auto& t : transforms) out += "|" + t;
  return out;
}

Dataset load_dataset(const DataSource& source, std::uint64_t seed) {
  if (source.path.has_value() == source.synth.has_value())
    throw Error(Errc::invalid_argument, "exactly one of a data file or a synthetic spec is needed");
  Dataset data = source.path ? dataio::load_sparse_text(*source.path)
                             : dataio::generate(*source.synth, seed);
  for (const auto& t : source.transforms) {
    const auto eq = t.find('=');
    const auto kind = dataio::parse_transform_kind(t.substr(0, eq));
    const double positive =
        eq == std::string::npos ? 1.0 : parse_number<double>(t.substr(eq + 1), "class");
    data = dataio::fit_apply_transform(data, kind, positive).first;
  }
  return data;
}

std::string_view to_string(RunStatus s) noexcept {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::error: return "error";
    case RunStatus::budget_exceeded: return "budget-exceeded";
  }
  return "unknown";
}

RunStatus parse_run_status(std::string_view s) {
  if (s == "ok") return RunStatus::ok;
  if (s == "error") return RunStatus::error;
  if (s == "budget-exceeded") return RunStatus::budget_exceeded;
  throw Error(Errc::invalid_argument, "unknown run status '" + std::string(s) + "'");
}

const std::vector<std::string>& record_header() {
  static const std::vector<std::string> header{
      "run_id",     "status",      "dataset",        "n",          "d",
      "learner",    "loss",        "k",              "scheduler",  "ordering",
      "strategy",   "repetition",  "seed",           "estimate",   "point_updates",
      "snapshots",  "nodes_visited", "model_transfers", "evaluations", "wall_time_s",
      "verified",   "message"};
  return header;
}

std::vector<std::string> to_row(const RunRecord& r) {
  const bool has_value = r.status == RunStatus::ok;
  return {std::to_string(r.run_id),
          std::string(to_string(r.status)),
          r.dataset,
          std::to_string(r.n),
          std::to_string(r.d),
          r.learner,
          r.loss,
          r.k_label.empty() ? std::to_string(r.k) : r.k_label,
          std::string(to_string(r.scheduler)),
          std::string(to_string(r.ordering)),
          std::string(to_string(r.strategy)),
          std::to_string(r.repetition),
          std::to_string(r.seed),
          has_value ? format_double(r.estimate) : "",
          std::to_string(r.counters.point_updates),
          std::to_string(r.counters.snapshots),
          std::to_string(r.counters.nodes_visited),
          std::to_string(r.counters.model_transfers),
          std::to_string(r.counters.evaluations),
          has_value ? format_double(r.wall_time) : "",
          r.verified,
          r.message};
}

RunRecord from_row(const std::vector<std::string>& row, std::size_t line) {
  if (row.size() != record_header().size())
    throw ParseError(line, "expected " + std::to_string(record_header().size()) +
                               " columns, got " + std::to_string(row.size()));
  try {
    RunRecord r;
    r.run_id = parse_number<std::size_t>(row[0], "run_id");
    r.status = parse_run_status(row[1]);
    r.dataset = row[2];
    r.n = parse_number<std::size_t>(row[3], "n");
    r.d = parse_number<std::size_t>(row[4], "d");
    r.learner = row[5];
    r.loss = row[6];
    r.k_label = row[7];
    r.k = row[7] == "n" ? r.n : parse_number<std::size_t>(row[7], "k");
    r.scheduler = parse_scheduler(row[8]);
    r.ordering = parse_ordering(row[9]);
    r.strategy = parse_strategy(row[10]);
    r.repetition = parse_number<std::size_t>(row[11], "repetition");
    r.seed = parse_number<std::uint64_t>(row[12], "seed");
    if (!row[13].empty()) r.estimate = parse_number<double>(row[13], "estimate");
    r.counters.point_updates = parse_number<std::uint64_t>(row[14], "point_updates");
    r.counters.snapshots = parse_number<std::uint64_t>(row[15], "snapshots");
    r.counters.nodes_visited = parse_number<std::uint64_t>(row[16], "nodes_visited");
    r.counters.model_transfers = parse_number<std::uint64_t>(row[17], "model_transfers");
    r.counters.evaluations = parse_number<std::uint64_t>(row[18], "evaluations");
    if (!row[19].empty()) r.wall_time = parse_number<double>(row[19], "wall_time_s");
    r.verified = row[20];
    r.message = row[21];
    return r;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace treecv::harness
