// Copyright 2026 The dzbar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace dzbar::cli {

namespace {

struct SplitRow {
  std::vector<std::string> fields;
  std::vector<std::size_t> columns;  // 1-based char offset of each field
};

SplitRow split_line(const std::string& line, char delimiter) {
  SplitRow row;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(delimiter, start);
    row.columns.push_back(start + 1);
    if (end == std::string::npos) {
      row.fields.push_back(line.substr(start));
      break;
    }
    row.fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return row;
}

}  // namespace

Dataset Dataset::read_file(const std::string& path, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseDiagnostic(path, 0, 0, "cannot open file");
  }
  Dataset d;
  d.path_ = path;

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    SplitRow row = split_line(line, delimiter);
    if (d.header_.empty()) {
      std::unordered_set<std::string> seen;
      for (std::size_t i = 0; i < row.fields.size(); ++i) {
        if (row.fields[i].empty()) {
          throw ParseDiagnostic(path, line_number, row.columns[i], "empty header name");
        }
        if (!seen.insert(row.fields[i]).second) {
          throw ParseDiagnostic(path, line_number, row.columns[i],
                                "duplicate column name '" + row.fields[i] + "'");
        }
      }
      d.header_ = std::move(row.fields);
      continue;
    }
    if (row.fields.size() != d.header_.size()) {
      throw ParseDiagnostic(path, line_number, 1,
                            "expected " + std::to_string(d.header_.size()) + " fields, got " +
                                std::to_string(row.fields.size()));
    }
    d.cells_.push_back(std::move(row.fields));
    d.cell_columns_.push_back(std::move(row.columns));
    d.line_numbers_.push_back(line_number);
  }
  if (d.header_.empty()) {
    throw ParseDiagnostic(path, line_number, 1, "missing header row");
  }
  if (d.cells_.empty()) {
    throw ParseDiagnostic(path, line_number, 1, "no data rows");
  }
  return d;
}

bool Dataset::has_column(const std::string& name) const {
  return std::find(header_.begin(), header_.end(), name) != header_.end();
}

Index Dataset::column_of(const std::string& name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) {
    throw SchemaError("column '" + name + "' not found in " + path_);
  }
  return static_cast<Index>(it - header_.begin());
}

std::vector<std::string> Dataset::string_column(const std::string& name) const {
  const auto c = static_cast<std::size_t>(column_of(name));
  std::vector<std::string> out;
  out.reserve(cells_.size());
  for (const auto& row : cells_) out.push_back(row[c]);
  return out;
}

Vec Dataset::numeric_column(const std::string& name) const {
  const auto c = static_cast<std::size_t>(column_of(name));
  Vec out(static_cast<Index>(cells_.size()));
  for (std::size_t r = 0; r < cells_.size(); ++r) {
    const std::string& cell = cells_[r][c];
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || cell.empty()) {
      throw ParseDiagnostic(path_, line_numbers_[r], cell_columns_[r][c],
                            "cannot parse '" + cell + "' in column '" + name + "' as a number");
    }
    if (!std::isfinite(value)) {
      throw ParseDiagnostic(path_, line_numbers_[r], cell_columns_[r][c],
                            "non-finite value in column '" + name + "'");
    }
    out[static_cast<Index>(r)] = value;
  }
  return out;
}

Vec Dataset::frequency_column() const {
  const Vec freq = numeric_column("freq");
  const auto c = static_cast<std::size_t>(column_of("freq"));
  for (Index r = 0; r < freq.size(); ++r) {
    if (freq[r] < 0.0) {
      throw ParseDiagnostic(path_, line_numbers_[static_cast<std::size_t>(r)],
                            cell_columns_[static_cast<std::size_t>(r)][c],
                            "freq must be nonnegative");
    }
  }
  return freq;
}

std::vector<std::string> Dataset::ids() const {
  const auto c = static_cast<std::size_t>(column_of("id"));
  std::vector<std::string> out;
  out.reserve(cells_.size());
  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < cells_.size(); ++r) {
    const std::string& id = cells_[r][c];
    if (!seen.insert(id).second) {
      throw ParseDiagnostic(path_, line_numbers_[r], cell_columns_[r][c],
                            "duplicate id '" + id + "'");
    }
    out.push_back(id);
  }
  return out;
}

}  // namespace dzbar::cli
