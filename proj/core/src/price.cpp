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

#include "dzbar/price.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dzbar/compensated.hpp"
#include "dzbar/errors.hpp"

namespace dzbar {

namespace {

constexpr double kFitnessConsistencyTolerance = 1e-10;

}  // namespace

PairedPopulation::PairedPopulation(FrequencyVector frequencies_initial_,
                                   FrequencyVector frequencies_changed_, Vec values_initial_,
                                   Vec values_changed_, std::optional<Vec> fitness_)
    : frequencies_initial(std::move(frequencies_initial_)),
      frequencies_changed(std::move(frequencies_changed_)),
      values_initial(std::move(values_initial_)),
      values_changed(std::move(values_changed_)),
      fitness(std::move(fitness_)) {
  const Index n = frequencies_initial.size();
  if (frequencies_changed.size() != n || values_initial.size() != n ||
      values_changed.size() != n || (fitness && fitness->size() != n)) {
    throw DimensionError("PairedPopulation: all vectors must share one length");
  }
  if (!values_initial.allFinite() || !values_changed.allFinite()) {
    throw ValidationError("PairedPopulation: values must be finite");
  }
  if (fitness) {
    const Vec scaled = normalize_fitness(*fitness, frequencies_initial);
    for (Index j = 0; j < n; ++j) {
      const double expected = frequencies_initial[j] * scaled[j];
      if (std::abs(frequencies_changed[j] - expected) > kFitnessConsistencyTolerance) {
        throw ValidationError(
            "PairedPopulation: changed frequency at index " + std::to_string(j) + " is " +
            std::to_string(frequencies_changed[j]) + " but fitness implies " +
            std::to_string(expected));
      }
    }
  }
}

PricePartition price_partition(const PairedPopulation& pop) {
  const Vec& q = pop.frequencies_initial.weights();
  const Vec& q_changed = pop.frequencies_changed.weights();
  PricePartition out{};
  out.form = PriceForm::dot_product;
  out.selection_term = compensated_dot(q_changed - q, pop.values_initial);
  out.transmission_term = compensated_dot(q_changed, pop.values_changed - pop.values_initial);
  out.total = compensated_dot(q_changed, pop.values_changed) - compensated_dot(q, pop.values_initial);
  return out;
}

PricePartition price_covariance_form(const PairedPopulation& pop) {
  if (!pop.fitness) {
    throw ValidationError("price_covariance_form: population carries no fitness values");
  }
  const Vec w = normalize_fitness(*pop.fitness, pop.frequencies_initial);
  const Vec& q = pop.frequencies_initial.weights();
  const Vec& q_changed = pop.frequencies_changed.weights();

  PricePartition out{};
  out.form = PriceForm::covariance_expectation;

  // Cov(w, z) under q. The mean of w is one by construction.
  const double mean_z = compensated_dot(q, pop.values_initial);
  CompensatedSum cov;
  for (Index j = 0; j < q.size(); ++j) {
    cov.add(q[j] * (w[j] - 1.0) * (pop.values_initial[j] - mean_z));
  }
  out.selection_term = cov.value();

  // E(w Δz) under q.
  CompensatedSum expectation;
  for (Index j = 0; j < q.size(); ++j) {
    expectation.add(q[j] * w[j] * (pop.values_changed[j] - pop.values_initial[j]));
  }
  out.transmission_term = expectation.value();

  out.total = compensated_dot(q_changed, pop.values_changed) - mean_z;
  return out;
}

Vec normalize_fitness(const Vec& fitness, const FrequencyVector& weights) {
  if (fitness.size() != weights.size()) {
    throw DimensionError("normalize_fitness: " + std::to_string(fitness.size()) +
                         " fitness values vs " + std::to_string(weights.size()) + " weights");
  }
  for (Index j = 0; j < fitness.size(); ++j) {
    if (!std::isfinite(fitness[j]) || fitness[j] < 0.0) {
      throw ValidationError("normalize_fitness: fitness at index " + std::to_string(j) +
                            " must be finite and nonnegative");
    }
  }
  const double mean = compensated_dot(weights.weights(), fitness);
  if (mean <= 0.0) {
    throw ValidationError("normalize_fitness: mean fitness is zero");
  }
  if (mean == 1.0) return fitness;
  return fitness / mean;
}

const char* to_string(PriceForm form) {
  switch (form) {
    case PriceForm::dot_product: return "dot_product";
    case PriceForm::covariance_expectation: return "covariance_expectation";
  }
  return "?";
}

}  // namespace dzbar
