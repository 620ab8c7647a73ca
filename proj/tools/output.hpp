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

#include <string>

#include <dzbar/report_json.hpp>

namespace dzbar::cli {

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<16 hex digits>".
/// Throws std::runtime_error when the file cannot be read.
std::string file_digest(const std::string& path);

/// Writes `text` to stdout, or to `out_path` when non-empty.
void emit(const std::string& text, const std::string& out_path);

/// Formats with 6 significant digits for table display.
std::string fmt6(double v);

/// Opens the standard report envelope: schema version, tool block, command.
/// The caller still owns the open object.
void begin_report(JsonWriter& w, const std::string& command);

/// One entry of the "inputs" array (the array must already be open).
void input_entry(JsonWriter& w, const std::string& role, const std::string& path);

}  // namespace dzbar::cli
