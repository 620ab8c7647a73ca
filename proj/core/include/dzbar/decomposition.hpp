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
#include <string>
#include <vector>

#include "dzbar/regression.hpp"

namespace dzbar {

/// One population: design, outcome values, entity frequencies. Entities need
/// not be paired with the other context; only fits and means enter the
/// decomposition.
struct ContextData {
  DesignMatrix design;
  Vec outcome;
  FrequencyVector frequencies;
  std::string label;

  ContextData(DesignMatrix design_, Vec outcome_, FrequencyVector frequencies_,
              std::string label_ = {});
};

/// Which context supplies the reference coefficients.
///
/// initial_reference splits Δz̄ into b·Δx̄ + x̄'·Δb (the default),
/// changed_reference into b'·Δx̄ + x̄·Δb, and threefold into
/// b·Δx̄ + x̄·Δb + Δx̄·Δb. All three sum to the same total.
enum class Convention {
  initial_reference,
  changed_reference,
  threefold,
};

struct PredictorContribution {
  Index column;
  double coefficients_fixed;
  double coefficient_change;
  double interaction;  // zero unless threefold
};

struct DecompositionReport {
  double total_change;             // z̄' − z̄ straight from outcomes and frequencies
  double coefficients_fixed_term;
  double coefficient_change_term;
  std::optional<double> interaction_term;  // engaged only for threefold
  double closure_error;            // (sum of terms) − total_change
  Convention convention;

  Vec coefficients_initial;        // b
  Vec coefficients_changed;        // b'
  Vec predictor_means_initial;     // x̄
  Vec predictor_means_changed;     // x̄'
  double mean_outcome_initial;
  double mean_outcome_changed;

  std::vector<PredictorContribution> per_predictor;
};

/// Fits each context separately and splits the change in the predicted mean
/// according to `convention`. Throws DimensionError when the contexts do not
/// share a predictor schema; fit errors propagate.
DecompositionReport decompose_mean_change(const ContextData& initial, const ContextData& changed,
                                          Convention convention = Convention::initial_reference,
                                          const FitOptions& options = {});

/// Per-column contributions recomputed from the coefficient and mean vectors
/// stored in `report`; each term's contributions sum back to the term.
std::vector<PredictorContribution> per_predictor_breakdown(const DecompositionReport& report);

const char* to_string(Convention convention);

}  // namespace dzbar
