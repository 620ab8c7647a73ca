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
#include "dzbar/regression.hpp"
#include "dzbar/types.hpp"

namespace dzbar {

/// Haploid population: 0/1 genotypes behind an intercept column, entity
/// frequencies, and nonnegative fitness values.
struct HaploidPopulation {
  DesignMatrix genotypes;
  FrequencyVector frequencies;
  Vec fitness;

  /// Validates that non-intercept genotype entries are exactly 0 or 1 and
  /// fitness values are finite and nonnegative.
  HaploidPopulation(DesignMatrix genotypes_, FrequencyVector frequencies_, Vec fitness_);
};

/// Marginal fitness w_i = p'_i/p_i and average excess α_i = w_i − 1 per
/// locus. Loci with p_i = p'_i = 0 have no defined ratio; they are NaN here
/// and listed in `undefined`.
struct MarginalFitness {
  Vec marginal;
  Vec excess;
  std::vector<Index> undefined;
};

/// Everything one selection episode produces. All fitness-derived fields
/// use fitness rescaled to mean one; raw fitness stays with the population.
struct SelectionSummary {
  Vec p_initial;                 // p, allele frequencies before selection
  Vec p_changed;                 // p'
  Vec delta_p;
  Vec marginal_fitness;          // NaN at undefined loci
  Vec average_excess;            // NaN at undefined loci
  std::vector<Index> undefined_loci;
  Vec coefficients_initial;      // b, zero at dropped columns
  Vec coefficients_changed;      // b'
  std::vector<Index> fixed_loci_initial;
  std::vector<Index> fixed_loci_changed;
  double ftns_term;              // b·Δp, the natural-selection term
  double environment_term;       // p'·Δb
  double total_change;           // w̄' − w̄
  double genetic_variance;       // Var(g) under initial frequencies
  double closure_error;          // (ftns + environment) − total
};

/// p_i = Σ_j q_j x_ij per column; p_0 is exactly 1.
Vec allele_frequencies(const HaploidPopulation& pop);

/// One selection step: q'_j = q_j·w_j with fitness rescaled to mean one.
/// Genotypes are unchanged; the returned population carries the rescaled
/// fitness.
HaploidPopulation select(const HaploidPopulation& pop);

/// Throws ConsistencyError if some p_i = 0 but p'_i > 0 (an allele cannot
/// gain frequency from zero under pure selection).
MarginalFitness marginal_fitness_and_excess(const Vec& p, const Vec& p_changed);

/// Δp_i computed as Cov(x_i, w) under q with fitness rescaled to mean one.
/// Component 0 is exactly 0. Equals the frequency-difference route.
Vec delta_p_via_covariance(const HaploidPopulation& pop);

/// Loci whose genotype column is constant across entities with positive
/// weight. Such columns are collinear with the intercept; fits drop them
/// and they contribute zero to both terms below.
std::vector<Index> fixed_loci(const DesignMatrix& genotypes, const FrequencyVector& weights);

/// Runs one full selection episode: fits fitness on genotypes before and
/// after selection, splits Δw̄ into b·Δp + p'·Δb, and checks that the
/// natural-selection term equals Cov(g,w) = Var(g) within 1e-10 before
/// returning. Throws ConsistencyError if the identity fails, and
/// RankDeficiencyError if non-fixed genotype columns are collinear.
SelectionSummary fundamental_theorem_term(const HaploidPopulation& pop);

}  // namespace dzbar
