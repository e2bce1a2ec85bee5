// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace treecv::harness {

/// RFC 4180 quoting: fields holding a comma, quote or newline are quoted.
std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads one record; returns false at end of input. Quoted fields may span
/// lines.
bool read_csv_row(std::istream& in, std::vector<std::string>& fields);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace treecv::harness
