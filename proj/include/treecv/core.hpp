// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "treecv/error.hpp"

namespace treecv {

// ---------------------------------------------------------------------------
// Outcomes and data points
// ---------------------------------------------------------------------------

struct NoLabel {
  friend bool operator==(NoLabel, NoLabel) = default;
};

/// A class label restricted to +1 / -1.
class BinaryLabel {
 public:
  explicit BinaryLabel(int sign);
  int value() const noexcept { return value_; }
  friend bool operator==(BinaryLabel, BinaryLabel) = default;

 private:
  int value_;
};

using Outcome = std::variant<NoLabel, double, BinaryLabel>;

bool is_labeled(const Outcome& y) noexcept;

/// Outcome as a real number. BinaryLabel maps to +-1.0; NoLabel throws
/// label_required.
double real_outcome(const Outcome& y);

/// Outcome as +1 / -1. Accepts BinaryLabel and the reals +-1.0 exactly;
/// anything else throws label_required.
int binary_outcome(const Outcome& y);

struct DataPoint {
  std::vector<double> x;
  Outcome y = NoLabel{};

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

/// Ordered multiset of points sharing one feature dimension. Immutable once
/// built; the constructor validates dimension, finiteness and the
/// all-or-nothing rule for NoLabel outcomes.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<DataPoint> points, std::size_t dim);

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return points_.empty(); }
  bool labeled() const noexcept { return labeled_; }

  const DataPoint& operator[](std::size_t i) const { return points_[i]; }
  std::span<const DataPoint> points() const noexcept { return points_; }

  /// Points [first, last).
  std::span<const DataPoint> slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<DataPoint> points_;
  std::size_t dim_ = 0;
  bool labeled_ = true;
};

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

/// k contiguous chunks over [0, n). Chunk i covers [bounds[i], bounds[i+1]).
class Partition {
 public:
  /// Ceiling rule: the first (n mod k) chunks get ceil(n/k) points, the rest
  /// floor(n/k). Requires 2 <= k <= n.
  static Partition make(std::size_t n, std::size_t k);

  std::size_t folds() const noexcept { return bounds_.size() - 1; }
  std::size_t total() const noexcept { return bounds_.back(); }
  std::size_t chunk_begin(std::size_t i) const { return bounds_.at(i); }
  std::size_t chunk_end(std::size_t i) const { return bounds_.at(i + 1); }
  std::size_t chunk_size(std::size_t i) const { return chunk_end(i) - chunk_begin(i); }
  std::span<const std::size_t> bounds() const noexcept { return bounds_; }

  /// Points of chunks first..last (inclusive). Contiguous because chunks are.
  std::span<const DataPoint> chunks(const Dataset& data, std::size_t first,
                                    std::size_t last) const;
  std::span<const DataPoint> chunk(const Dataset& data, std::size_t i) const {
    return chunks(data, i, i);
  }

 private:
  explicit Partition(std::vector<std::size_t> bounds) : bounds_(std::move(bounds)) {}
  std::vector<std::size_t> bounds_{0};
};

inline Partition partition(const Dataset& data, std::size_t k) {
  return Partition::make(data.size(), k);
}

// ---------------------------------------------------------------------------
// Predictions and losses
// ---------------------------------------------------------------------------

/// A scalar (label or regression value) or a point in feature space (a
/// cluster center).
using Prediction = std::variant<double, std::vector<double>>;

enum class LossKind { misclassification, squared_error, quantization };

std::string_view to_string(LossKind kind) noexcept;
/// Accepts the CLI spellings zeroone / squared / quantization as well.
LossKind parse_loss_kind(std::string_view name);

class Loss {
 public:
  explicit Loss(LossKind kind) : kind_(kind) {}

  LossKind kind() const noexcept { return kind_; }
  double operator()(const Prediction& p, std::span<const double> x,
                    const Outcome& y) const;

 private:
  LossKind kind_;
};

// ---------------------------------------------------------------------------
// Compensated summation
// ---------------------------------------------------------------------------

class KahanSum {
 public:
  void add(double v) noexcept {
    const double y = v - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace treecv
