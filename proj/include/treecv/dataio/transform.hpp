// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treecv/core.hpp"

namespace treecv::dataio {

enum class TransformKind { unit_variance, targets_unit_range, binarize };

TransformKind parse_transform_kind(std::string_view name);

/// A fitted transform. Fit on the whole dataset, before any partitioning.
struct TransformSpec {
  TransformKind kind = TransformKind::unit_variance;
  std::vector<double> feature_scale;  // unit_variance: population std (1 when degenerate)
  double target_min = 0.0;            // targets_unit_range
  double target_max = 0.0;
  double positive_class = 1.0;        // binarize
  /// Features left unscaled because their variance is zero.
  std::vector<std::size_t> degenerate_features;
};

/// unit_variance divides each feature by its population standard deviation
/// without centering. targets_unit_range maps outcomes affinely onto [0, 1]
/// and throws degenerate_range for a constant target. binarize maps outcomes
/// equal to `positive_class` to +1 and everything else to -1.
std::pair<Dataset, TransformSpec> fit_apply_transform(const Dataset& data, TransformKind kind,
                                                      double positive_class = 1.0);

Dataset apply_transform(const Dataset& data, const TransformSpec& spec);

}  // namespace treecv::dataio
