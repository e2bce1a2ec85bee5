// SPDX-License-Identifier: Apache-2.0
#include "treecv/dataio/synth.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "treecv/dataio/transform.hpp"
#include "treecv/rng.hpp"

namespace treecv::dataio {

namespace {

void check_sizes(std::size_t n, std::size_t d) {
  if (n < 2) throw Error(Errc::invalid_argument, "synthetic datasets need n >= 2");
  if (d < 1) throw Error(Errc::invalid_argument, "synthetic datasets need d >= 1");
}

std::vector<double> random_unit_vector(std::size_t d, CounterRng& rng) {
  std::vector<double> w(d);
  double sq = 0.0;
  do {
    sq = 0.0;
    for (auto& wi : w) {
      wi = rng.normal();
      sq += wi * wi;
    }
  } while (sq == 0.0);
  const double norm = std::sqrt(sq);
  for (auto& wi : w) wi /= norm;
  return w;
}

CounterRng model_stream(std::uint64_t seed) {
  return CounterRng(derive_key(seed, {stream_tag::synth, 1}));
}

CounterRng point_stream(std::uint64_t seed) {
  return CounterRng(derive_key(seed, {stream_tag::synth, 2}));
}

}  // namespace

Dataset synth_classification(std::size_t n, std::size_t d, double margin, double noise,
                             std::uint64_t seed) {
  check_sizes(n, d);
  if (margin < 0.0 || !(noise >= 0.0 && noise <= 1.0))
    throw Error(Errc::invalid_argument, "classification needs margin >= 0 and noise in [0, 1]");
  auto mrng = model_stream(seed);
  const auto w = random_unit_vector(d, mrng);
  auto rng = point_stream(seed);
  std::vector<DataPoint> points(n);
  for (auto& p : points) {
    p.x.resize(d);
    for (auto& xi : p.x) xi = rng.normal();
    const double s = dot(w, p.x);
    const double side = s >= 0.0 ? 1.0 : -1.0;
    if (std::abs(s) < margin) {
      const double shift = side * margin - s;
      for (std::size_t j = 0; j < d; ++j) p.x[j] += shift * w[j];
    }
    int label = side > 0 ? 1 : -1;
    if (rng.uniform01() < noise) label = -label;
    p.y = BinaryLabel(label);
  }
  return Dataset(std::move(points), d);
}

Dataset synth_regression(std::size_t n, std::size_t d, double noise, std::uint64_t seed) {
  check_sizes(n, d);
  if (noise < 0.0) throw Error(Errc::invalid_argument, "regression noise must be >= 0");
  auto mrng = model_stream(seed);
  const auto w = random_unit_vector(d, mrng);
  auto rng = point_stream(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<DataPoint> points(n);
  for (auto& p : points) {
    p.x.resize(d);
    for (auto& xi : p.x) xi = rng.normal() * scale;
    p.y = dot(w, p.x) + noise * rng.normal();
  }
  return fit_apply_transform(Dataset(std::move(points), d), TransformKind::targets_unit_range)
      .first;
}

Dataset synth_blobs(std::size_t n, std::size_t d, std::size_t clusters, double spread,
                    std::uint64_t seed) {
  check_sizes(n, d);
  if (clusters < 1 || clusters > n)
    throw Error(Errc::invalid_argument, "blobs need 1 <= K <= n");
  if (spread < 0.0) throw Error(Errc::invalid_argument, "blob spread must be >= 0");
  auto mrng = model_stream(seed);
  std::vector<std::vector<double>> centers(clusters, std::vector<double>(d));
  for (auto& c : centers)
    for (auto& ci : c) ci = -10.0 + 20.0 * mrng.uniform01();
  auto rng = point_stream(seed);
  std::vector<DataPoint> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = centers[i % clusters];
    points[i].x.resize(d);
    for (std::size_t j = 0; j < d; ++j) points[i].x[j] = c[j] + spread * rng.normal();
  }
  return Dataset(std::move(points), d);
}

Dataset shuffle_dataset(const Dataset& data, std::uint64_t seed) {
  std::vector<DataPoint> points(data.points().begin(), data.points().end());
  CounterRng rng(derive_key(seed, stream_tag::shuffle));
  shuffle_in_place(std::span<DataPoint>(points), rng);
  return Dataset(std::move(points), data.dim());
}

Dataset head(const Dataset& data, std::size_t n) {
  if (n > data.size())
    throw Error(Errc::invalid_argument, "requested " + std::to_string(n) +
                                            " points from a dataset of " +
                                            std::to_string(data.size()));
  const auto s = data.slice(0, n);
  return Dataset(std::vector<DataPoint>(s.begin(), s.end()), data.dim());
}

namespace {

template <typename T>
T parse_value(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw Error(Errc::invalid_argument, "bad value '" + value + "' for synth key '" + key + "'");
  return out;
}

}  // namespace

SynthSpec parse_synth_spec(const std::string& text) {
  SynthSpec spec;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (spec.kind != "classification" && spec.kind != "regression" && spec.kind != "blobs")
    throw Error(Errc::invalid_argument, "unknown synthetic dataset kind '" + spec.kind + "'");
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::invalid_argument, "synth option '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "n") spec.n = parse_value<std::size_t>(key, value);
    else if (key == "d") spec.d = parse_value<std::size_t>(key, value);
    else if (key == "margin") spec.margin = parse_value<double>(key, value);
    else if (key == "noise") spec.noise = parse_value<double>(key, value);
    else if (key == "K" || key == "clusters") spec.clusters = parse_value<std::size_t>(key, value);
    else if (key == "spread") spec.spread = parse_value<double>(key, value);
    else throw Error(Errc::invalid_argument, "unknown synth option '" + key + "'");
  }
  return spec;
}

std::string to_string(const SynthSpec& spec) {
  std::ostringstream out;
  out << spec.kind << ":n=" << spec.n << ",d=" << spec.d;
  if (spec.kind == "classification") out << ",margin=" << spec.margin << ",noise=" << spec.noise;
  if (spec.kind == "regression") out << ",noise=" << spec.noise;
  if (spec.kind == "blobs") out << ",K=" << spec.clusters << ",spread=" << spec.spread;
  return out.str();
}

Dataset generate(const SynthSpec& spec, std::uint64_t seed) {
  if (spec.kind == "classification")
    return synth_classification(spec.n, spec.d, spec.margin, spec.noise, seed);
  if (spec.kind == "regression") return synth_regression(spec.n, spec.d, spec.noise, seed);
  if (spec.kind == "blobs") return synth_blobs(spec.n, spec.d, spec.clusters, spec.spread, seed);
  throw Error(Errc::invalid_argument, "unknown synthetic dataset kind '" + spec.kind + "'");
}

}  // namespace treecv::dataio
