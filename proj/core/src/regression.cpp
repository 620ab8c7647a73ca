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

#include "dzbar/regression.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dzbar/compensated.hpp"
#include "dzbar/errors.hpp"

namespace dzbar {

namespace {

std::string join_indices(const std::vector<Index>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

// Walks columns left to right and flags each one whose residual, after
// projecting out the columns kept so far, is below `threshold` times its
// own norm. Deterministic in column order, so diagnostics are reproducible:
// the first of two collinear columns is kept, the later one reported.
std::vector<Index> dependent_columns(const Mat& a, double threshold) {
  std::vector<Index> dependent;
  std::vector<Vec> basis;  // orthonormal
  for (Index c = 0; c < a.cols(); ++c) {
    Vec v = a.col(c);
    const double norm0 = v.norm();
    if (norm0 == 0.0) {
      dependent.push_back(c);
      continue;
    }
    // Two projection passes keep the basis orthogonal enough to decide at
    // thresholds as tight as 1e-10.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& q : basis) v -= q.dot(v) * q;
    }
    const double norm1 = v.norm();
    if (norm1 <= threshold * norm0) {
      dependent.push_back(c);
    } else {
      basis.push_back(v / norm1);
    }
  }
  return dependent;
}

}  // namespace

RegressionFit fit_weighted_least_squares(const DesignMatrix& design, const Vec& outcome,
                                         const FrequencyVector& weights,
                                         const FitOptions& options) {
  const Index m = design.rows();
  const Index k = design.cols();
  if (outcome.size() != m || weights.size() != m) {
    throw DimensionError("fit_weighted_least_squares: design has " + std::to_string(m) +
                         " rows but outcome has " + std::to_string(outcome.size()) +
                         " and weights " + std::to_string(weights.size()));
  }
  if (!outcome.allFinite()) {
    throw ValidationError("fit_weighted_least_squares: outcome entries must be finite");
  }

  const Vec sqrt_w = weights.weights().array().sqrt();
  if (weights.support_size() < k) {
    throw ValidationError("fit_weighted_least_squares: only " +
                          std::to_string(weights.support_size()) +
                          " entities carry positive weight, fewer than the " +
                          std::to_string(k) + " design columns");
  }

  Mat scaled = sqrt_w.asDiagonal() * design.values();
  Vec scaled_outcome = sqrt_w.cwiseProduct(outcome);

  // Rank decision on singular values of the weighted design; column naming
  // via the order-respecting sweep below.
  Eigen::BDCSVD<Mat> svd(scaled);
  const double sigma_max = svd.singularValues()(0);
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > options.rank_threshold * sigma_max) ++rank;
  }

  std::vector<Index> dropped;
  if (sigma_max == 0.0 || rank < k) {
    dropped = dependent_columns(scaled, options.rank_threshold);
    if (dropped.empty()) {
      // Borderline disagreement between the two criteria; trust the sweep
      // and proceed with the full design.
    } else if (!options.drop_dependent_columns) {
      throw RankDeficiencyError(
          "fit_weighted_least_squares: weighted design is rank deficient; dependent "
          "columns: " + join_indices(dropped),
          dropped);
    }
  }

  Vec coefficients = Vec::Zero(k);
  if (dropped.empty()) {
    coefficients = scaled.colPivHouseholderQr().solve(scaled_outcome);
  } else {
    std::vector<Index> kept;
    kept.reserve(static_cast<std::size_t>(k) - dropped.size());
    std::size_t d = 0;
    for (Index c = 0; c < k; ++c) {
      if (d < dropped.size() && dropped[d] == c) {
        ++d;
      } else {
        kept.push_back(c);
      }
    }
    Mat reduced(m, static_cast<Index>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i) reduced.col(static_cast<Index>(i)) = scaled.col(kept[i]);
    const Vec b = reduced.colPivHouseholderQr().solve(scaled_outcome);
    for (std::size_t i = 0; i < kept.size(); ++i) coefficients[kept[i]] = b[static_cast<Index>(i)];
  }

  RegressionFit fit{std::move(coefficients), Vec(), Vec(), weights, std::move(dropped)};
  fit.fitted = design.values() * fit.coefficients;
  fit.residuals = outcome - fit.fitted;
  return fit;
}

double weighted_mean(const Vec& values, const FrequencyVector& weights) {
  if (values.size() != weights.size()) {
    throw DimensionError("weighted_mean: " + std::to_string(values.size()) + " values vs " +
                         std::to_string(weights.size()) + " weights");
  }
  return compensated_dot(weights.weights(), values);
}

double weighted_covariance(const Vec& a, const Vec& b, const FrequencyVector& weights) {
  if (a.size() != b.size() || a.size() != weights.size()) {
    throw DimensionError("weighted_covariance: mismatched lengths");
  }
  const double mean_a = compensated_dot(weights.weights(), a);
  const double mean_b = compensated_dot(weights.weights(), b);
  CompensatedSum acc;
  for (Index j = 0; j < a.size(); ++j) {
    acc.add(weights[j] * (a[j] - mean_a) * (b[j] - mean_b));
  }
  return acc.value();
}

double predicted_mean(const RegressionFit& fit, const Vec& predictor_means) {
  if (predictor_means.size() != fit.coefficients.size()) {
    throw DimensionError("predicted_mean: " + std::to_string(predictor_means.size()) +
                         " means vs " + std::to_string(fit.coefficients.size()) +
                         " coefficients");
  }
  if (predictor_means[0] != 1.0) {
    throw ValidationError("predicted_mean: component 0 of the mean vector must be 1 (the "
                          "intercept column)");
  }
  return compensated_dot(fit.coefficients, predictor_means);
}

Vec weighted_column_means(const DesignMatrix& design, const FrequencyVector& weights) {
  if (design.rows() != weights.size()) {
    throw DimensionError("weighted_column_means: design rows " + std::to_string(design.rows()) +
                         " vs weights " + std::to_string(weights.size()));
  }
  Vec means(design.cols());
  means[0] = 1.0;  // column 0 is all ones and the weights sum to one
  for (Index i = 1; i < design.cols(); ++i) {
    means[i] = compensated_dot(weights.weights(), design.column(i));
  }
  return means;
}

}  // namespace dzbar
