// SPDX-License-Identifier: Apache-2.0
#include "treecv/dataio/transform.hpp"

#include <algorithm>
#include <cmath>

namespace treecv::dataio {

TransformKind parse_transform_kind(std::string_view name) {
  if (name == "unit-variance") return TransformKind::unit_variance;
  if (name == "targets-01") return TransformKind::targets_unit_range;
  if (name == "binarize") return TransformKind::binarize;
  throw Error(Errc::invalid_argument, "unknown transform '" + std::string(name) + "'");
}

namespace {

TransformSpec fit(const Dataset& data, TransformKind kind, double positive_class) {
  if (data.empty()) throw Error(Errc::empty_input, "cannot fit a transform on an empty dataset");
  TransformSpec spec;
  spec.kind = kind;
  switch (kind) {
    case TransformKind::unit_variance: {
      const std::size_t d = data.dim();
      const double n = static_cast<double>(data.size());
      std::vector<double> mean(d, 0.0);
      for (const auto& p : data.points())
        for (std::size_t j = 0; j < d; ++j) mean[j] += p.x[j];
      for (auto& m : mean) m /= n;
      std::vector<double> var(d, 0.0);
      for (const auto& p : data.points())
        for (std::size_t j = 0; j < d; ++j) {
          const double c = p.x[j] - mean[j];
          var[j] += c * c;
        }
      spec.feature_scale.resize(d);
      for (std::size_t j = 0; j < d; ++j) {
        const double sd = std::sqrt(var[j] / n);
        if (sd > 0.0) {
          spec.feature_scale[j] = sd;
        } else {
          spec.feature_scale[j] = 1.0;
          spec.degenerate_features.push_back(j);
        }
      }
      break;
    }
    case TransformKind::targets_unit_range: {
      spec.target_min = spec.target_max = real_outcome(data[0].y);
      for (const auto& p : data.points()) {
        const double y = real_outcome(p.y);
        spec.target_min = std::min(spec.target_min, y);
        spec.target_max = std::max(spec.target_max, y);
      }
      if (!(spec.target_max > spec.target_min))
        throw Error(Errc::degenerate_range, "target is constant; cannot scale to [0, 1]");
      break;
    }
    case TransformKind::binarize:
      spec.positive_class = positive_class;
      break;
  }
  return spec;
}

}  // namespace

Dataset apply_transform(const Dataset& data, const TransformSpec& spec) {
  std::vector<DataPoint> out(data.points().begin(), data.points().end());
  switch (spec.kind) {
    case TransformKind::unit_variance:
      if (spec.feature_scale.size() != data.dim())
        throw Error(Errc::invalid_argument, "transform fitted for a different dimension");
      for (auto& p : out)
        for (std::size_t j = 0; j < p.x.size(); ++j) p.x[j] /= spec.feature_scale[j];
      break;
    case TransformKind::targets_unit_range: {
      const double range = spec.target_max - spec.target_min;
      for (auto& p : out) p.y = (real_outcome(p.y) - spec.target_min) / range;
      break;
    }
    case TransformKind::binarize:
      for (auto& p : out)
        p.y = BinaryLabel(real_outcome(p.y) == spec.positive_class ? 1 : -1);
      break;
  }
  return Dataset(std::move(out), data.dim());
}

std::pair<Dataset, TransformSpec> fit_apply_transform(const Dataset& data, TransformKind kind,
                                                      double positive_class) {
  auto spec = fit(data, kind, positive_class);
  return {apply_transform(data, spec), std::move(spec)};
}

}  // namespace treecv::dataio
