// SPDX-License-Identifier: Apache-2.0
#include "treecv/dataio/sparse_text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace treecv::dataio {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "cannot parse number '" + std::string(tok) + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value '" + std::string(tok) + "'");
  return v;
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '-')
    throw ParseError(line, "feature index must be >= 1, got '" + std::string(tok) + "'");
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "cannot parse feature index '" + std::string(tok) + "'");
  if (v < 1) throw ParseError(line, "feature index must be >= 1, got 0");
  return v;
}

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

RawRecord parse_record(const std::string& raw, std::size_t line_number) {
  std::string_view line(raw);
  if (const auto hash = line.find('#'); hash != std::string_view::npos)
    line = line.substr(0, hash);
  const auto tokens = split_tokens(line);

  RawRecord rec;
  std::size_t first_feature = 0;
  if (!tokens.empty() && tokens[0].find(':') == std::string_view::npos) {
    rec.label = parse_real(tokens[0], line_number);
    first_feature = 1;
  }
  for (std::size_t t = first_feature; t < tokens.size(); ++t) {
    const auto tok = tokens[t];
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(line_number, "expected idx:val, got '" + std::string(tok) + "'");
    const std::size_t idx = parse_index(tok.substr(0, colon), line_number);
    const double val = parse_real(tok.substr(colon + 1), line_number);
    if (!rec.features.empty() && idx <= rec.features.back().first)
      throw ParseError(line_number, "feature indices must be strictly increasing (" +
                                        std::to_string(rec.features.back().first) +
                                        " then " + std::to_string(idx) + ")");
    rec.features.emplace_back(idx, val);
  }
  return rec;
}

Dataset parse_sparse_text(std::istream& in, std::optional<std::size_t> expected_dim) {
  std::vector<RawRecord> records;
  std::vector<std::size_t> line_numbers;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto rec = parse_record(line, line_number);
    const bool blank = !rec.label && rec.features.empty();
    if (blank) continue;
    if (!records.empty() && rec.label.has_value() != records.front().label.has_value())
      throw ParseError(line_number, "labeled and unlabeled lines cannot be mixed");
    if (!rec.features.empty()) {
      const std::size_t last = rec.features.back().first;
      if (expected_dim && last > *expected_dim)
        throw ParseError(line_number, "feature index " + std::to_string(last) +
                                          " exceeds dimension " + std::to_string(*expected_dim));
      max_index = std::max(max_index, last);
    }
    records.push_back(std::move(rec));
    line_numbers.push_back(line_number);
  }

  const std::size_t dim = expected_dim.value_or(max_index);
  std::vector<DataPoint> points;
  points.reserve(records.size());
  for (auto& rec : records) {
    DataPoint p;
    p.x.assign(dim, 0.0);
    for (const auto& [idx, val] : rec.features) p.x[idx - 1] = val;
    if (rec.label) p.y = *rec.label;
    points.push_back(std::move(p));
  }
  return Dataset(std::move(points), dim);
}

Dataset parse_sparse_text(const std::string& text, std::optional<std::size_t> expected_dim) {
  std::istringstream in(text);
  return parse_sparse_text(in, expected_dim);
}

Dataset load_sparse_text(const std::string& path, std::optional<std::size_t> expected_dim) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open dataset '" + path + "'");
  return parse_sparse_text(in, expected_dim);
}

void write_sparse_text(std::ostream& out, const Dataset& data) {
  for (const auto& p : data.points()) {
    std::string line;
    const bool labeled = is_labeled(p.y);
    if (labeled) line = format_real(real_outcome(p.y));
    bool any = false;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      if (p.x[i] == 0.0) continue;
      if (!line.empty()) line += ' ';
      line += std::to_string(i + 1) + ':' + format_real(p.x[i]);
      any = true;
    }
    if (!labeled && !any) line = "1:0";
    out << line << '\n';
  }
}

std::string to_sparse_text(const Dataset& data) {
  std::ostringstream out;
  write_sparse_text(out, data);
  return out.str();
}

}  // namespace treecv::dataio
