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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <dzbar/types.hpp>

namespace dzbar::cli {

/// A problem tied to a position in an input file. Rendered as
/// "path:line:column: message" and mapped to exit code 1.
class ParseDiagnostic : public std::runtime_error {
 public:
  ParseDiagnostic(std::string path, std::size_t line, std::size_t column, std::string message)
      : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        path_(std::move(path)),
        line_(line),
        column_(column) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

/// Structural problems (missing or mismatched columns, unmatched ids).
/// Mapped to exit code 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Delimiter-separated text with a header row. Required columns: `id`
/// (text, unique) and `freq` (nonnegative reals). Cells are kept as text
/// with their positions; numeric parsing happens per requested column so
/// diagnostics can point at the offending cell.
class Dataset {
 public:
  static Dataset read_file(const std::string& path, char delimiter);

  const std::string& path() const { return path_; }
  const std::vector<std::string>& header() const { return header_; }
  Index rows() const { return static_cast<Index>(cells_.size()); }

  bool has_column(const std::string& name) const;

  /// Throws SchemaError naming the column when absent.
  Index column_of(const std::string& name) const;

  std::vector<std::string> string_column(const std::string& name) const;

  /// Strict numeric parse of every cell in the column; throws
  /// ParseDiagnostic at the first bad cell.
  Vec numeric_column(const std::string& name) const;

  /// The `freq` column, additionally checked nonnegative.
  Vec frequency_column() const;

  /// The `id` column, additionally checked unique.
  std::vector<std::string> ids() const;

 private:
  std::string path_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> cells_;
  std::vector<std::vector<std::size_t>> cell_columns_;  // 1-based char offset per cell
  std::vector<std::size_t> line_numbers_;               // 1-based line per data row
};

}  // namespace dzbar::cli
