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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dzbar/types.hpp"

namespace dzbar {

/// Formats a double with 17 significant digits, which round-trips the exact
/// bit pattern through any correct parser.
std::string format_double(double v);

/// Streaming JSON writer used for machine-readable reports. Every
/// floating-point number goes through format_double; NaN becomes null.
/// Output is deterministic: two identical call sequences produce identical
/// bytes.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();

  /// Starts a key inside an object; follow with a value or container.
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  JsonWriter& field(std::string_view k, double v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, int v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, std::int64_t v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, std::uint64_t v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, bool v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, std::string_view v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, const char* v) {
    return key(k).value(std::string_view(v));
  }

  /// key: [v0, v1, ...] on one line.
  JsonWriter& number_array(std::string_view k, const Vec& values);
  JsonWriter& index_array(std::string_view k, const std::vector<Index>& values);

  /// An inline [v0, v1, ...] value, e.g. one row of a matrix.
  JsonWriter& number_row(const Vec& values);

  /// Finishes and returns the document (trailing newline included).
  std::string str();

 private:
  enum class Scope { object, array };

  void prefix_value();
  void newline_indent();
  void write_escaped(std::string_view s);

  std::string out_;
  std::vector<Scope> scopes_;
  std::vector<bool> has_items_;
  bool pending_key_ = false;
};

}  // namespace dzbar
