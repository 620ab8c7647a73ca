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

#include <optional>

#include "dzbar/frequency_vector.hpp"
#include "dzbar/types.hpp"

namespace dzbar {

/// A population observed in two contexts with entities paired by index.
///
/// When fitness is present it must drive the frequency change: after
/// rescaling fitness to mean one, q'_j must equal q_j·w_j within 1e-10.
/// Extinct entities (q'_j = 0) are fine; their value change carries zero
/// weight in the transmission term.
struct PairedPopulation {
  FrequencyVector frequencies_initial;  // q
  FrequencyVector frequencies_changed;  // q'
  Vec values_initial;                   // z
  Vec values_changed;                   // z'
  std::optional<Vec> fitness;           // w, nonnegative

  PairedPopulation(FrequencyVector frequencies_initial_, FrequencyVector frequencies_changed_,
                   Vec values_initial_, Vec values_changed_,
                   std::optional<Vec> fitness_ = std::nullopt);
};

enum class PriceForm { dot_product, covariance_expectation };

struct PricePartition {
  double selection_term;     // Δq·z, or Cov(w,z)
  double transmission_term;  // q'·Δz, or E(wΔz)
  double total;              // z̄' − z̄ straight from the data
  PriceForm form;
};

/// Δz̄ = Δq·z + q'·Δz. Works for any pair of frequency vectors.
PricePartition price_partition(const PairedPopulation& pop);

/// Δz̄ = Cov(w,z) + E(wΔz) with fitness rescaled to mean one internally.
/// Requires fitness; agrees with price_partition term by term whenever the
/// frequency change is exactly fitness-driven.
PricePartition price_covariance_form(const PairedPopulation& pop);

/// w / w̄ so the q-weighted mean is one. Returns w unchanged when the mean
/// is already exactly one. Throws on negative entries or zero mean.
Vec normalize_fitness(const Vec& fitness, const FrequencyVector& weights);

const char* to_string(PriceForm form);

}  // namespace dzbar
