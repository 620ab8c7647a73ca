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

#include "dzbar/fisher.hpp"

namespace dzbar {

/// Haploid selection simulator configuration.
///
/// Entity j at generation t has fitness
///
///   w_j(t) = max(0, 1 + Σ_i (s_i + t·environment_shift)·x_ij
///                    + Σ_{i<k} e_ik·x_ij·x_kj)
///
/// with additive effects s from `additive_effects` (a single value is
/// broadcast to all loci) and pairwise epistasis coefficients e_ik drawn
/// uniformly from [−epistasis_magnitude, epistasis_magnitude]. Genotypes are
/// fair-coin draws, initial frequencies are uniform, and every random draw
/// comes from SeededRng in a fixed order, so a seed pins the whole run.
/// Frequencies update deterministically via q' = q·w; there is no sampling
/// drift.
struct SimulationConfig {
  std::uint64_t seed = 42;
  int loci = 4;
  int entities = 64;
  int generations = 20;
  std::vector<double> additive_effects = {0.1};
  double epistasis_magnitude = 0.0;
  double environment_shift = 0.0;
};

enum class SimulationStatus { completed, stopped_rank_deficient, stopped_zero_fitness };

struct SimulationResult {
  std::vector<SelectionSummary> generations;
  SimulationStatus status = SimulationStatus::completed;
  int stopped_at = -1;  // generation that failed to fit, when stopped early
  std::string message;
};

/// Throws ValidationError naming the offending field.
void validate(const SimulationConfig& config);

/// Deterministic for a fixed config. Stops early (with status) if genotype
/// columns become collinear beyond fixation; fixed loci alone do not stop a
/// run since fits drop them.
SimulationResult simulate(const SimulationConfig& config);

}  // namespace dzbar
