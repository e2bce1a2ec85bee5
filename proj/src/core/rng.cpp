// SPDX-License-Identifier: Apache-2.0
#include "treecv/rng.hpp"

#include <cmath>
#include <numbers>

namespace treecv {

double CounterRng::normal() noexcept {
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace treecv
