// SPDX-License-Identifier: Apache-2.0
#include "treecv/core.hpp"

#include <cmath>
#include <type_traits>

namespace treecv {

BinaryLabel::BinaryLabel(int sign) : value_(sign) {
  if (sign != 1 && sign != -1)
    throw Error(Errc::invalid_argument,
                "binary label must be +1 or -1, got " + std::to_string(sign));
}

bool is_labeled(const Outcome& y) noexcept {
  return !std::holds_alternative<NoLabel>(y);
}

double real_outcome(const Outcome& y) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoLabel>) {
          throw Error(Errc::label_required, "real-valued outcome required, point is unlabeled");
        } else if constexpr (std::is_same_v<T, BinaryLabel>) {
          return static_cast<double>(v.value());
        } else {
          return v;
        }
      },
      y);
}

int binary_outcome(const Outcome& y) {
  if (const auto* b = std::get_if<BinaryLabel>(&y)) return b->value();
  if (const auto* r = std::get_if<double>(&y)) {
    if (*r == 1.0) return 1;
    if (*r == -1.0) return -1;
    throw Error(Errc::label_required,
                "binary label (+1/-1) required, got " + std::to_string(*r));
  }
  throw Error(Errc::label_required, "binary label required, point is unlabeled");
}

Dataset::Dataset(std::vector<DataPoint> points, std::size_t dim)
    : points_(std::move(points)), dim_(dim) {
  std::size_t unlabeled = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (p.x.size() != dim_)
      throw Error(Errc::invalid_argument, "point " + std::to_string(i) + " has dimension " +
                                              std::to_string(p.x.size()) + ", expected " +
                                              std::to_string(dim_));
    for (double v : p.x)
      if (!std::isfinite(v))
        throw Error(Errc::invalid_argument,
                    "point " + std::to_string(i) + " has a non-finite feature");
    if (const auto* r = std::get_if<double>(&p.y); r && !std::isfinite(*r))
      throw Error(Errc::invalid_argument,
                  "point " + std::to_string(i) + " has a non-finite outcome");
    if (!is_labeled(p.y)) ++unlabeled;
  }
  if (unlabeled != 0 && unlabeled != points_.size())
    throw Error(Errc::invalid_argument,
                "NoLabel outcomes are only allowed when the whole dataset is unlabeled");
  labeled_ = points_.empty() || unlabeled == 0;
}

std::span<const DataPoint> Dataset::slice(std::size_t first, std::size_t last) const {
  if (first > last || last > points_.size())
    throw Error(Errc::invalid_argument, "slice out of range");
  return std::span<const DataPoint>(points_).subspan(first, last - first);
}

Partition Partition::make(std::size_t n, std::size_t k) {
  if (k < 2 || k > n)
    throw Error(Errc::invalid_fold_count, "fold count k=" + std::to_string(k) +
                                              " must satisfy 2 <= k <= n=" + std::to_string(n));
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::vector<std::size_t> bounds(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) bounds[i + 1] = bounds[i] + base + (i < extra ? 1 : 0);
  return Partition(std::move(bounds));
}

std::span<const DataPoint> Partition::chunks(const Dataset& data, std::size_t first,
                                             std::size_t last) const {
  if (data.size() != total())
    throw Error(Errc::invalid_argument, "partition covers " + std::to_string(total()) +
                                            " points but dataset has " +
                                            std::to_string(data.size()));
  if (first > last || last >= folds())
    throw Error(Errc::invalid_chunk, "chunk range out of bounds");
  return data.slice(bounds_[first], bounds_[last + 1]);
}

std::string_view to_string(LossKind kind) noexcept {
  switch (kind) {
    case LossKind::misclassification: return "zeroone";
    case LossKind::squared_error: return "squared";
    case LossKind::quantization: return "quantization";
  }
  return "unknown";
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "zeroone" || name == "misclassification") return LossKind::misclassification;
  if (name == "squared" || name == "squared-error") return LossKind::squared_error;
  if (name == "quantization" || name == "kmeans-quantization") return LossKind::quantization;
  throw Error(Errc::invalid_argument, "unknown loss '" + std::string(name) + "'");
}

namespace {

double scalar_prediction(const Prediction& p) {
  if (const auto* v = std::get_if<double>(&p)) return *v;
  throw Error(Errc::invalid_argument, "loss expects a scalar prediction");
}

}  // namespace

double Loss::operator()(const Prediction& p, std::span<const double> x,
                        const Outcome& y) const {
  switch (kind_) {
    case LossKind::misclassification: {
      const int label = binary_outcome(y);
      return scalar_prediction(p) == static_cast<double>(label) ? 0.0 : 1.0;
    }
    case LossKind::squared_error: {
      const double r = scalar_prediction(p) - real_outcome(y);
      return r * r;
    }
    case LossKind::quantization: {
      const auto* c = std::get_if<std::vector<double>>(&p);
      if (c == nullptr)
        throw Error(Errc::invalid_argument, "quantization loss expects a center prediction");
      return squared_distance(x, *c);
    }
  }
  return 0.0;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace treecv
