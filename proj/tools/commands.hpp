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
#include <vector>

namespace dzbar::cli {

// Stable exit codes, shared by every subcommand:
//   0  success
//   1  parse failure (input file or config), diagnostic names file:line:column
//   2  schema mismatch (missing columns, unmatched ids, inconsistent data)
//   3  degenerate model (rank-deficient design, zero mean fitness)
//   4  verify found a failing case
enum ExitCode : int {
  exit_ok = 0,
  exit_parse = 1,
  exit_schema = 2,
  exit_degenerate = 3,
  exit_verify_failed = 4,
};

struct CommonOptions {
  std::string format = "table";  // "table" or "machine"
  std::string out_path;          // empty writes to stdout
  char delimiter = ',';
  bool normalize_freq = false;
};

struct DecomposeArgs {
  std::string initial_path;
  std::string changed_path;
  std::string outcome;
  std::vector<std::string> predictors;
  std::string convention = "paper";  // paper | changed-ref | threefold
  bool drop_collinear = false;
  CommonOptions common;
};

struct PriceArgs {
  std::string initial_path;
  std::string changed_path;
  std::string outcome;
  std::string fitness;  // empty: no fitness column
  CommonOptions common;
};

struct FisherSimArgs {
  std::string config_path;
  CommonOptions common;
};

struct VerifyArgs {
  std::uint64_t seed = 20260810;
  std::int64_t cases = 1000;
  bool inject_fault = false;  // honored only in fault-injection builds
  CommonOptions common;
};

int cmd_decompose(const DecomposeArgs& args);
int cmd_price(const PriceArgs& args);
int cmd_fisher_sim(const FisherSimArgs& args);
int cmd_verify(const VerifyArgs& args);

}  // namespace dzbar::cli
