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

#include "dzbar/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dzbar/compensated.hpp"
#include "dzbar/errors.hpp"
#include "dzbar/price.hpp"

namespace dzbar {

namespace {

constexpr double kIdentityTolerance = 1e-10;
constexpr double kRouteTolerance = 1e-12;

// Fits `outcome` on the design with the listed columns excluded; the full
// coefficient vector carries zeros at excluded columns. Rank errors inside
// the reduced fit are remapped to original column indices.
Vec fit_excluding(const DesignMatrix& design, const Vec& outcome, const FrequencyVector& weights,
                  const std::vector<Index>& excluded) {
  if (excluded.empty()) {
    return fit_weighted_least_squares(design, outcome, weights).coefficients;
  }
  std::vector<Index> kept;
  kept.reserve(static_cast<std::size_t>(design.cols()) - excluded.size());
  std::size_t e = 0;
  for (Index c = 0; c < design.cols(); ++c) {
    if (e < excluded.size() && excluded[e] == c) {
      ++e;
    } else {
      kept.push_back(c);
    }
  }
  Mat reduced(design.rows(), static_cast<Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    reduced.col(static_cast<Index>(i)) = design.values().col(kept[i]);
  }
  Vec full = Vec::Zero(design.cols());
  try {
    const Vec b =
        fit_weighted_least_squares(DesignMatrix(std::move(reduced)), outcome, weights).coefficients;
    for (std::size_t i = 0; i < kept.size(); ++i) full[kept[i]] = b[static_cast<Index>(i)];
  } catch (const RankDeficiencyError& err) {
    std::vector<Index> remapped;
    remapped.reserve(err.dependent_columns().size());
    for (Index c : err.dependent_columns()) remapped.push_back(kept[static_cast<std::size_t>(c)]);
    std::string which;
    for (std::size_t i = 0; i < remapped.size(); ++i) {
      if (i) which += ", ";
      which += std::to_string(remapped[i]);
    }
    throw RankDeficiencyError(
        "fisher: genotype columns " + which + " are collinear beyond fixation", remapped);
  }
  return full;
}

}  // namespace

HaploidPopulation::HaploidPopulation(DesignMatrix genotypes_, FrequencyVector frequencies_,
                                     Vec fitness_)
    : genotypes(std::move(genotypes_)),
      frequencies(std::move(frequencies_)),
      fitness(std::move(fitness_)) {
  const Index m = genotypes.rows();
  if (frequencies.size() != m || fitness.size() != m) {
    throw DimensionError("HaploidPopulation: genotypes have " + std::to_string(m) +
                         " rows, frequencies " + std::to_string(frequencies.size()) +
                         ", fitness " + std::to_string(fitness.size()));
  }
  for (Index i = 1; i < genotypes.cols(); ++i) {
    for (Index j = 0; j < m; ++j) {
      const double x = genotypes.values()(j, i);
      if (x != 0.0 && x != 1.0) {
        throw ValidationError("HaploidPopulation: genotype at entity " + std::to_string(j) +
                              ", locus " + std::to_string(i) + " is " + std::to_string(x) +
                              ", not 0 or 1");
      }
    }
  }
  for (Index j = 0; j < m; ++j) {
    if (!std::isfinite(fitness[j]) || fitness[j] < 0.0) {
      throw ValidationError("HaploidPopulation: fitness of entity " + std::to_string(j) +
                            " must be finite and nonnegative");
    }
  }
}

Vec allele_frequencies(const HaploidPopulation& pop) {
  return weighted_column_means(pop.genotypes, pop.frequencies);
}

HaploidPopulation select(const HaploidPopulation& pop) {
  const Vec scaled = normalize_fitness(pop.fitness, pop.frequencies);
  const Vec changed = pop.frequencies.weights().cwiseProduct(scaled);
  return HaploidPopulation(pop.genotypes, FrequencyVector(Vec(changed)), Vec(scaled));
}

MarginalFitness marginal_fitness_and_excess(const Vec& p, const Vec& p_changed) {
  if (p.size() != p_changed.size()) {
    throw DimensionError("marginal_fitness_and_excess: " + std::to_string(p.size()) + " vs " +
                         std::to_string(p_changed.size()) + " loci");
  }
  MarginalFitness out;
  out.marginal.resize(p.size());
  out.excess.resize(p.size());
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      if (p_changed[i] > 0.0) {
        throw ConsistencyError("marginal_fitness_and_excess: locus " + std::to_string(i) +
                               " has p = 0 but p' = " + std::to_string(p_changed[i]) +
                               "; an allele cannot appear under pure selection");
      }
      out.marginal[i] = std::numeric_limits<double>::quiet_NaN();
      out.excess[i] = std::numeric_limits<double>::quiet_NaN();
      out.undefined.push_back(i);
    } else {
      out.marginal[i] = p_changed[i] / p[i];
      out.excess[i] = out.marginal[i] - 1.0;
    }
  }
  return out;
}

Vec delta_p_via_covariance(const HaploidPopulation& pop) {
  const Vec scaled = normalize_fitness(pop.fitness, pop.frequencies);
  Vec delta(pop.genotypes.cols());
  delta[0] = 0.0;  // the intercept column is constant
  for (Index i = 1; i < pop.genotypes.cols(); ++i) {
    delta[i] = weighted_covariance(pop.genotypes.column(i), scaled, pop.frequencies);
  }
  return delta;
}

std::vector<Index> fixed_loci(const DesignMatrix& genotypes, const FrequencyVector& weights) {
  std::vector<Index> fixed;
  for (Index i = 1; i < genotypes.cols(); ++i) {
    bool seen = false;
    double first = 0.0;
    bool constant = true;
    for (Index j = 0; j < genotypes.rows(); ++j) {
      if (weights[j] <= 0.0) continue;
      const double x = genotypes.values()(j, i);
      if (!seen) {
        first = x;
        seen = true;
      } else if (x != first) {
        constant = false;
        break;
      }
    }
    if (constant) fixed.push_back(i);
  }
  return fixed;
}

SelectionSummary fundamental_theorem_term(const HaploidPopulation& pop) {
  const Vec scaled_fitness = normalize_fitness(pop.fitness, pop.frequencies);
  const HaploidPopulation normalized(pop.genotypes, pop.frequencies, Vec(scaled_fitness));
  const HaploidPopulation selected = select(normalized);

  SelectionSummary s;
  s.p_initial = allele_frequencies(normalized);
  s.p_changed = allele_frequencies(selected);
  s.delta_p = s.p_changed - s.p_initial;

  MarginalFitness mf = marginal_fitness_and_excess(s.p_initial, s.p_changed);
  s.marginal_fitness = std::move(mf.marginal);
  s.average_excess = std::move(mf.excess);
  s.undefined_loci = std::move(mf.undefined);

  s.fixed_loci_initial = fixed_loci(pop.genotypes, pop.frequencies);
  s.fixed_loci_changed = fixed_loci(pop.genotypes, selected.frequencies);
  s.coefficients_initial =
      fit_excluding(pop.genotypes, scaled_fitness, pop.frequencies, s.fixed_loci_initial);
  s.coefficients_changed =
      fit_excluding(pop.genotypes, scaled_fitness, selected.frequencies, s.fixed_loci_changed);

  s.ftns_term = compensated_dot(s.coefficients_initial, s.delta_p);
  s.environment_term =
      compensated_dot(s.p_changed, s.coefficients_changed - s.coefficients_initial);
  s.total_change = weighted_mean(scaled_fitness, selected.frequencies) -
                   weighted_mean(scaled_fitness, pop.frequencies);
  s.closure_error = (s.ftns_term + s.environment_term) - s.total_change;

  // Second route to the natural-selection term: Σ p_i α_i b_i.
  CompensatedSum excess_route;
  for (Index i = 0; i < s.p_initial.size(); ++i) {
    if (std::isnan(s.average_excess[i])) continue;  // p = p' = 0, contributes nothing
    excess_route.add(s.p_initial[i] * s.average_excess[i] * s.coefficients_initial[i]);
  }
  const double route2 = excess_route.value();
  if (std::abs(s.ftns_term - route2) > kRouteTolerance * std::max(1.0, std::abs(s.ftns_term))) {
    throw ConsistencyError("fundamental_theorem_term: b·Δp and Σ p α b disagree: " +
                           std::to_string(s.ftns_term) + " vs " + std::to_string(route2));
  }

  // The natural-selection term must be the additive genetic variance.
  const Vec genetic_values = pop.genotypes.values() * s.coefficients_initial;
  s.genetic_variance = weighted_covariance(genetic_values, genetic_values, pop.frequencies);
  const double cov_gw = weighted_covariance(genetic_values, scaled_fitness, pop.frequencies);
  const double scale = std::max({1.0, std::abs(s.genetic_variance), std::abs(s.ftns_term)});
  if (std::abs(s.ftns_term - cov_gw) > kIdentityTolerance * scale ||
      std::abs(cov_gw - s.genetic_variance) > kIdentityTolerance * scale) {
    throw ConsistencyError("fundamental_theorem_term: b·Δp = " + std::to_string(s.ftns_term) +
                           ", Cov(g,w) = " + std::to_string(cov_gw) + ", Var(g) = " +
                           std::to_string(s.genetic_variance) + " should all agree");
  }
  if (std::abs(s.closure_error) > kIdentityTolerance * std::max(1.0, std::abs(s.total_change))) {
    throw ConsistencyError("fundamental_theorem_term: b·Δp + p'·Δb misses Δw̄ by " +
                           std::to_string(s.closure_error));
  }
  return s;
}

}  // namespace dzbar
