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

#include <vector>

#include "dzbar/design_matrix.hpp"
#include "dzbar/frequency_vector.hpp"
#include "dzbar/types.hpp"

namespace dzbar {

struct FitOptions {
  /// Relative singular-value threshold below which the weighted design is
  /// declared rank deficient.
  double rank_threshold = 1e-10;

  /// When the design is rank deficient, drop the dependent columns (their
  /// coefficients are pinned to zero) instead of throwing
  /// RankDeficiencyError. Off by default: a silently altered model makes
  /// decomposition terms non-reproducible.
  bool drop_dependent_columns = false;
};

/// Frequency-weighted least-squares fit of one context. Immutable once
/// built; safe to share across threads.
///
/// By construction the q-weighted mean of `residuals` is zero and the
/// residuals are q-orthogonal to every design column.
struct RegressionFit {
  Vec coefficients;  // one per design column; dropped columns hold zero
  Vec fitted;        // g_j = b · x_j
  Vec residuals;     // z_j − g_j
  FrequencyVector weights;
  std::vector<Index> dropped_columns;  // empty unless drop_dependent_columns
};

/// Minimizes Σ_j q_j (z_j − b·x_j)² via a column-pivoted QR factorization of
/// the √q-row-scaled design. Throws DimensionError on size mismatch,
/// ValidationError when fewer positively weighted rows than columns remain,
/// RankDeficiencyError (listing the dependent columns) when the weighted
/// design is numerically singular and dropping is not enabled.
RegressionFit fit_weighted_least_squares(const DesignMatrix& design, const Vec& outcome,
                                         const FrequencyVector& weights,
                                         const FitOptions& options = {});

/// Σ_j q_j v_j, compensated.
double weighted_mean(const Vec& values, const FrequencyVector& weights);

/// Σ_j q_j (a_j − ā)(b_j − b̄) with q-weighted means ā, b̄.
double weighted_covariance(const Vec& a, const Vec& b, const FrequencyVector& weights);

/// b · x̄ for an arbitrary predictor-mean vector. `predictor_means[0]` must
/// be exactly 1. When x̄ is the weighted column mean of the fitting design,
/// this reproduces the weighted mean of the outcome.
double predicted_mean(const RegressionFit& fit, const Vec& predictor_means);

/// q-weighted mean of each design column. Component 0 is exactly 1.
Vec weighted_column_means(const DesignMatrix& design, const FrequencyVector& weights);

}  // namespace dzbar
