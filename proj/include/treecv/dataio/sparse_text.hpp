// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "treecv/core.hpp"

namespace treecv::dataio {

/// One parsed line before densification.
struct RawRecord {
  std::optional<double> label;  // absent for unlabeled lines
  std::vector<std::pair<std::size_t, double>> features;  // 1-based, increasing
};

/// Parses the `label idx:val idx:val ...` format used by the LibSVM dataset
/// collection. Blank lines are skipped, `#` starts a comment, CRLF is
/// accepted. A line whose first token is an `idx:val` pair is unlabeled;
/// labeled and unlabeled lines cannot be mixed.
///
/// The dimension is the largest index seen, or `expected_dim` when given
/// (then any larger index is an error). Throws ParseError with the line.
Dataset parse_sparse_text(std::istream& in, std::optional<std::size_t> expected_dim = {});
Dataset parse_sparse_text(const std::string& text,
                          std::optional<std::size_t> expected_dim = {});
Dataset load_sparse_text(const std::string& path,
                         std::optional<std::size_t> expected_dim = {});

RawRecord parse_record(const std::string& line, std::size_t line_number);

/// Writes the same format with shortest round-trip number formatting. Zero
/// features are omitted, except that an unlabeled all-zero point is written
/// as `1:0` so the line survives.
void write_sparse_text(std::ostream& out, const Dataset& data);
std::string to_sparse_text(const Dataset& data);

}  // namespace treecv::dataio
