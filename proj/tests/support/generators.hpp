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

// Seeded random instances for property tests.

#pragma once

#include <dzbar/decomposition.hpp>
#include <dzbar/design_matrix.hpp>
#include <dzbar/fisher.hpp>
#include <dzbar/frequency_vector.hpp>
#include <dzbar/price.hpp>
#include <dzbar/rng.hpp>
#include <dzbar/types.hpp>

namespace gen {

using dzbar::Index;
using dzbar::Mat;
using dzbar::Vec;

inline Vec vector(dzbar::SeededRng& rng, Index n, double lo = -10.0, double hi = 10.0) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

/// Strictly positive weights, normalized.
inline dzbar::FrequencyVector frequencies(dzbar::SeededRng& rng, Index n) {
  Vec w(n);
  for (Index i = 0; i < n; ++i) w[i] = rng.uniform(0.05, 1.0);
  return dzbar::FrequencyVector(std::move(w), dzbar::FrequencyVector::Normalize::yes);
}

inline dzbar::DesignMatrix design(dzbar::SeededRng& rng, Index entities, Index predictors,
                                  double lo = -5.0, double hi = 5.0) {
  Mat pred(entities, predictors);
  for (Index j = 0; j < entities; ++j) {
    for (Index i = 0; i < predictors; ++i) pred(j, i) = rng.uniform(lo, hi);
  }
  return dzbar::DesignMatrix::with_intercept(pred);
}

struct Dataset {
  dzbar::DesignMatrix design;
  Vec outcome;
  dzbar::FrequencyVector weights;
};

/// Outcome = noisy linear function of the predictors, so fits are well
/// conditioned but residuals are nonzero.
inline Dataset dataset(dzbar::SeededRng& rng, Index entities, Index predictors) {
  dzbar::DesignMatrix x = design(rng, entities, predictors);
  const Vec beta = vector(rng, predictors + 1, -3.0, 3.0);
  Vec z = x.values() * beta;
  for (Index j = 0; j < entities; ++j) z[j] += rng.uniform(-1.0, 1.0);
  return {std::move(x), std::move(z), frequencies(rng, entities)};
}

inline dzbar::ContextData context(dzbar::SeededRng& rng, Index entities, Index predictors,
                                  const char* label) {
  Dataset d = dataset(rng, entities, predictors);
  return dzbar::ContextData(std::move(d.design), std::move(d.outcome), std::move(d.weights),
                            label);
}

/// 0/1 genotypes with every locus polymorphic, strictly positive fitness.
/// Fitness is additive plus (optional) pairwise epistasis plus noise.
inline dzbar::HaploidPopulation population(dzbar::SeededRng& rng, Index loci, Index entities,
                                           bool epistatic) {
  Mat geno(entities, loci + 1);
  geno.col(0) = Vec::Ones(entities);
  for (Index i = 1; i <= loci; ++i) {
    while (true) {
      double sum = 0.0;
      for (Index j = 0; j < entities; ++j) {
        geno(j, i) = rng.bernoulli(0.5) ? 1.0 : 0.0;
        sum += geno(j, i);
      }
      if (sum > 0.0 && sum < static_cast<double>(entities)) break;  // keep polymorphic
    }
  }
  const Vec effects = vector(rng, loci, -0.1, 0.1);
  Vec fitness(entities);
  for (Index j = 0; j < entities; ++j) {
    double w = 1.0;
    for (Index i = 1; i <= loci; ++i) w += effects[i - 1] * geno(j, i);
    if (epistatic) {
      for (Index i = 1; i <= loci; ++i) {
        for (Index k = i + 1; k <= loci; ++k) {
          w += 0.05 * rng.uniform(-1.0, 1.0) * geno(j, i) * geno(j, k);
        }
      }
    }
    fitness[j] = std::max(w, 0.05);
  }
  return dzbar::HaploidPopulation(dzbar::DesignMatrix(std::move(geno)),
                                  frequencies(rng, entities), std::move(fitness));
}

/// Paired population whose frequency change is exactly fitness-driven.
inline dzbar::PairedPopulation paired_population(dzbar::SeededRng& rng, Index n) {
  dzbar::FrequencyVector q = frequencies(rng, n);
  Vec w(n);
  for (Index j = 0; j < n; ++j) w[j] = rng.uniform(0.1, 2.0);
  const Vec scaled = dzbar::normalize_fitness(w, q);
  const Vec q_changed = q.weights().cwiseProduct(scaled);
  Vec z = vector(rng, n);
  Vec z_changed = vector(rng, n);
  return dzbar::PairedPopulation(std::move(q), dzbar::FrequencyVector(Vec(q_changed)),
                                 std::move(z), std::move(z_changed), Vec(scaled));
}

}  // namespace gen
