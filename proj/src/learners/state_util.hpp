// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "treecv/error.hpp"
#include "treecv/learner.hpp"

namespace treecv::learners::detail {

inline std::uint64_t bits(double v) noexcept { return std::bit_cast<std::uint64_t>(v); }

inline void check_compatible(const SavedState& state, const std::string& learner,
                             const std::vector<std::uint64_t>& config) {
  if (state.learner != learner)
    throw Error(Errc::state_mismatch,
                "cannot restore a " + state.learner + " state into a " + learner + " learner");
  if (state.config != config)
    throw Error(Errc::state_mismatch,
                "saved " + learner + " state has a different configuration");
}

}  // namespace treecv::learners::detail
