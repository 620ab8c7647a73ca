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

#include "dzbar/report_json.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>

namespace dzbar {

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  prefix_value();
  out_ += '{';
  scopes_.push_back(Scope::object);
  has_items_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  assert(!scopes_.empty() && scopes_.back() == Scope::object);
  const bool had_items = has_items_.back();
  scopes_.pop_back();
  has_items_.pop_back();
  if (had_items) newline_indent();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  prefix_value();
  out_ += '[';
  scopes_.push_back(Scope::array);
  has_items_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  assert(!scopes_.empty() && scopes_.back() == Scope::array);
  const bool had_items = has_items_.back();
  scopes_.pop_back();
  has_items_.pop_back();
  if (had_items) newline_indent();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  assert(!scopes_.empty() && scopes_.back() == Scope::object && !pending_key_);
  if (has_items_.back()) out_ += ',';
  has_items_.back() = true;
  newline_indent();
  out_ += '"';
  write_escaped(k);
  out_ += "\": ";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  prefix_value();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<std::int64_t>(v)); }

JsonWriter& JsonWriter::value(std::int64_t v) {
  prefix_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  prefix_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  prefix_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  prefix_value();
  out_ += '"';
  write_escaped(v);
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::null() {
  prefix_value();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::number_array(std::string_view k, const Vec& values) {
  key(k);
  pending_key_ = false;
  out_ += '[';
  for (Index i = 0; i < values.size(); ++i) {
    if (i) out_ += ", ";
    out_ += format_double(values[i]);
  }
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::index_array(std::string_view k, const std::vector<Index>& values) {
  key(k);
  pending_key_ = false;
  out_ += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ += ", ";
    out_ += std::to_string(values[i]);
  }
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::number_row(const Vec& values) {
  prefix_value();
  out_ += '[';
  for (Index i = 0; i < values.size(); ++i) {
    if (i) out_ += ", ";
    out_ += format_double(values[i]);
  }
  out_ += ']';
  return *this;
}

std::string JsonWriter::str() {
  assert(scopes_.empty());
  std::string doc = out_;
  doc += '\n';
  return doc;
}

void JsonWriter::prefix_value() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!scopes_.empty() && scopes_.back() == Scope::array) {
    if (has_items_.back()) out_ += ',';
    has_items_.back() = true;
    newline_indent();
  }
}

void JsonWriter::newline_indent() {
  out_ += '\n';
  out_.append(2 * scopes_.size(), ' ');
}

void JsonWriter::write_escaped(std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\r': out_ += "\\r"; break;
      case '\t': out_ += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
        break;
    }
  }
}

}  // namespace dzbar
