// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "treecv/learner.hpp"

namespace treecv::learners {

enum class Kind { pegasos, lsqsgd, kmeans, mean };

Kind parse_kind(std::string_view name);
std::string_view to_string(Kind kind) noexcept;

struct Hyperparameters {
  double lambda = 1e-4;                  // PEGASOS regularization
  std::optional<double> step_size;       // LSQSGD; default n^{-1/2}
  std::size_t clusters = 2;              // k-means K
};

/// Factory for `kind` on data of dimension `dim`. `n` is the full dataset
/// size and only feeds the default LSQSGD step size.
LearnerFactory make_factory(Kind kind, std::size_t dim, std::size_t n,
                            const Hyperparameters& hp);

/// The loss each learner is evaluated with by default.
LossKind default_loss(Kind kind) noexcept;

/// True for learners whose models are deterministic functions of the feeding
/// order (all shipped learners).
bool deterministic(Kind kind) noexcept;

}  // namespace treecv::learners
