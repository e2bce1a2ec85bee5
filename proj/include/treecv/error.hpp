// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treecv {

enum class Errc {
  invalid_argument,
  invalid_fold_count,
  invalid_chunk,
  label_required,
  untrained_model,
  state_mismatch,
  inconsistent_state,
  invalid_order,
  parse_error,
  degenerate_range,
  empty_input,
};

const char* to_string(Errc code) noexcept;

/// Base error for everything the library throws. Carries a machine-checkable
/// code next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(Errc::parse_error,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based physical line number in the input.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace treecv
