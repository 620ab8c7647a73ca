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

#include "dzbar/decomposition.hpp"

#include <string>
#include <utility>

#include "dzbar/compensated.hpp"
#include "dzbar/errors.hpp"

namespace dzbar {

ContextData::ContextData(DesignMatrix design_, Vec outcome_, FrequencyVector frequencies_,
                         std::string label_)
    : design(std::move(design_)),
      outcome(std::move(outcome_)),
      frequencies(std::move(frequencies_)),
      label(std::move(label_)) {
  if (outcome.size() != design.rows() || frequencies.size() != design.rows()) {
    throw DimensionError("ContextData: design has " + std::to_string(design.rows()) +
                         " rows, outcome " + std::to_string(outcome.size()) +
                         ", frequencies " + std::to_string(frequencies.size()));
  }
  if (!outcome.allFinite()) {
    throw ValidationError("ContextData: outcome entries must be finite");
  }
}

DecompositionReport decompose_mean_change(const ContextData& initial, const ContextData& changed,
                                          Convention convention, const FitOptions& options) {
  if (initial.design.cols() != changed.design.cols()) {
    throw DimensionError("decompose_mean_change: predictor schema mismatch (" +
                         std::to_string(initial.design.cols()) + " vs " +
                         std::to_string(changed.design.cols()) + " columns)");
  }

  const RegressionFit fit_initial =
      fit_weighted_least_squares(initial.design, initial.outcome, initial.frequencies, options);
  const RegressionFit fit_changed =
      fit_weighted_least_squares(changed.design, changed.outcome, changed.frequencies, options);

  DecompositionReport report;
  report.convention = convention;
  report.coefficients_initial = fit_initial.coefficients;
  report.coefficients_changed = fit_changed.coefficients;
  report.predictor_means_initial = weighted_column_means(initial.design, initial.frequencies);
  report.predictor_means_changed = weighted_column_means(changed.design, changed.frequencies);
  report.mean_outcome_initial = weighted_mean(initial.outcome, initial.frequencies);
  report.mean_outcome_changed = weighted_mean(changed.outcome, changed.frequencies);
  report.total_change = report.mean_outcome_changed - report.mean_outcome_initial;

  const Vec delta_means = report.predictor_means_changed - report.predictor_means_initial;
  const Vec delta_coefficients = report.coefficients_changed - report.coefficients_initial;

  switch (convention) {
    case Convention::initial_reference:
      report.coefficients_fixed_term = compensated_dot(report.coefficients_initial, delta_means);
      report.coefficient_change_term =
          compensated_dot(report.predictor_means_changed, delta_coefficients);
      report.interaction_term = std::nullopt;
      break;
    case Convention::changed_reference:
      report.coefficients_fixed_term = compensated_dot(report.coefficients_changed, delta_means);
      report.coefficient_change_term =
          compensated_dot(report.predictor_means_initial, delta_coefficients);
      report.interaction_term = std::nullopt;
      break;
    case Convention::threefold:
      report.coefficients_fixed_term = compensated_dot(report.coefficients_initial, delta_means);
      report.coefficient_change_term =
          compensated_dot(report.predictor_means_initial, delta_coefficients);
      report.interaction_term = compensated_dot(delta_means, delta_coefficients);
      break;
  }

  double term_sum = report.coefficients_fixed_term + report.coefficient_change_term;
  if (report.interaction_term) term_sum += *report.interaction_term;
  report.closure_error = term_sum - report.total_change;

  report.per_predictor = per_predictor_breakdown(report);
  return report;
}

std::vector<PredictorContribution> per_predictor_breakdown(const DecompositionReport& report) {
  const Index k = report.coefficients_initial.size();
  std::vector<PredictorContribution> contributions;
  contributions.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const double delta_mean =
        report.predictor_means_changed[i] - report.predictor_means_initial[i];
    const double delta_coefficient =
        report.coefficients_changed[i] - report.coefficients_initial[i];
    PredictorContribution c{i, 0.0, 0.0, 0.0};
    switch (report.convention) {
      case Convention::initial_reference:
        c.coefficients_fixed = report.coefficients_initial[i] * delta_mean;
        c.coefficient_change = report.predictor_means_changed[i] * delta_coefficient;
        break;
      case Convention::changed_reference:
        c.coefficients_fixed = report.coefficients_changed[i] * delta_mean;
        c.coefficient_change = report.predictor_means_initial[i] * delta_coefficient;
        break;
      case Convention::threefold:
        c.coefficients_fixed = report.coefficients_initial[i] * delta_mean;
        c.coefficient_change = report.predictor_means_initial[i] * delta_coefficient;
        c.interaction = delta_mean * delta_coefficient;
        break;
    }
    contributions.push_back(c);
  }
  return contributions;
}

const char* to_string(Convention convention) {
  switch (convention) {
    case Convention::initial_reference: return "paper";
    case Convention::changed_reference: return "changed-ref";
    case Convention::threefold: return "threefold";
  }
  return "?";
}

}  // namespace dzbar
