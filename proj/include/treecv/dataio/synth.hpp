// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "treecv/core.hpp"

namespace treecv::dataio {

// Desk-scale synthetic datasets. Every generator is a pure function of its
// arguments: the same seed gives a bit-identical dataset.

/// Gaussian inputs labelled by a random hyperplane through the origin.
/// Points within `margin` of the hyperplane are pushed out to distance
/// `margin`; each label is then flipped with probability `noise`.
Dataset synth_classification(std::size_t n, std::size_t d, double margin, double noise,
                             std::uint64_t seed);

/// Gaussian inputs scaled by 1/sqrt(d), targets from a random unit-norm
/// linear model plus Gaussian noise of std `noise`, then mapped onto [0, 1].
Dataset synth_regression(std::size_t n, std::size_t d, double noise, std::uint64_t seed);

/// Unlabeled points around K centers drawn uniformly from [-10, 10]^d; point
/// i belongs to blob i mod K and has isotropic Gaussian spread `spread`.
Dataset synth_blobs(std::size_t n, std::size_t d, std::size_t clusters, double spread,
                    std::uint64_t seed);

/// Seeded Fisher-Yates permutation of the points.
Dataset shuffle_dataset(const Dataset& data, std::uint64_t seed);

/// First `n` points.
Dataset head(const Dataset& data, std::size_t n);

/// Parsed form of a `kind:key=value,...` generator description, e.g.
/// `classification:n=2000,d=20,margin=0.1,noise=0.05`.
struct SynthSpec {
  std::string kind;  // classification | regression | blobs
  std::size_t n = 1000;
  std::size_t d = 10;
  double margin = 0.0;
  double noise = 0.0;
  std::size_t clusters = 3;
  double spread = 1.0;
};

SynthSpec parse_synth_spec(const std::string& text);
std::string to_string(const SynthSpec& spec);
Dataset generate(const SynthSpec& spec, std::uint64_t seed);

}  // namespace treecv::dataio
