// SPDX-License-Identifier: Apache-2.0
#include "treecv/learners/factory.hpp"

#include <cmath>

#include "treecv/learners/kmeans.hpp"
#include "treecv/learners/lsqsgd.hpp"
#include "treecv/learners/mean_predictor.hpp"
#include "treecv/learners/pegasos.hpp"

namespace treecv::learners {

Kind parse_kind(std::string_view name) {
  if (name == "pegasos") return Kind::pegasos;
  if (name == "lsqsgd") return Kind::lsqsgd;
  if (name == "kmeans") return Kind::kmeans;
  if (name == "mean") return Kind::mean;
  throw Error(Errc::invalid_argument, "unknown learner '" + std::string(name) + "'");
}

std::string_view to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::pegasos: return "pegasos";
    case Kind::lsqsgd: return "lsqsgd";
    case Kind::kmeans: return "kmeans";
    case Kind::mean: return "mean";
  }
  return "unknown";
}

LearnerFactory make_factory(Kind kind, std::size_t dim, std::size_t n,
                            const Hyperparameters& hp) {
  switch (kind) {
    case Kind::pegasos: {
      Pegasos prototype(dim, hp.lambda);  // validates lambda up front
      return [dim, lambda = hp.lambda] { return std::make_unique<Pegasos>(dim, lambda); };
    }
    case Kind::lsqsgd: {
      if (!hp.step_size && n == 0)
        throw Error(Errc::invalid_argument, "LSQSGD default step size needs n > 0");
      const double alpha = hp.step_size.value_or(1.0 / std::sqrt(static_cast<double>(n)));
      LsqSgd prototype(dim, alpha);
      return [dim, alpha] { return std::make_unique<LsqSgd>(dim, alpha); };
    }
    case Kind::kmeans: {
      OnlineKMeans prototype(dim, hp.clusters);
      return [dim, k = hp.clusters] { return std::make_unique<OnlineKMeans>(dim, k); };
    }
    case Kind::mean:
      return [] { return std::make_unique<MeanPredictor>(); };
  }
  throw Error(Errc::invalid_argument, "unknown learner kind");
}

LossKind default_loss(Kind kind) noexcept {
  switch (kind) {
    case Kind::pegasos: return LossKind::misclassification;
    case Kind::lsqsgd: return LossKind::squared_error;
    case Kind::kmeans: return LossKind::quantization;
    case Kind::mean: return LossKind::squared_error;
  }
  return LossKind::squared_error;
}

bool deterministic(Kind) noexcept { return true; }

}  // namespace treecv::learners
