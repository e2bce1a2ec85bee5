// SPDX-License-Identifier: Apache-2.0
#include "treecv/error.hpp"

namespace treecv {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_fold_count: return "invalid-fold-count";
    case Errc::invalid_chunk: return "invalid-chunk";
    case Errc::label_required: return "label-required";
    case Errc::untrained_model: return "untrained-model";
    case Errc::state_mismatch: return "state-mismatch";
    case Errc::inconsistent_state: return "inconsistent-state";
    case Errc::invalid_order: return "invalid-order";
    case Errc::parse_error: return "parse-error";
    case Errc::degenerate_range: return "degenerate-range";
    case Errc::empty_input: return "empty-input";
  }
  return "unknown";
}

}  // namespace treecv
