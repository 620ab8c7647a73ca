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

#include "dzbar/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dzbar/compensated.hpp"
#include "dzbar/errors.hpp"
#include "dzbar/rng.hpp"

namespace dzbar {

void validate(const SimulationConfig& config) {
  if (config.loci < 1) {
    throw ValidationError("loci: must be at least 1, got " + std::to_string(config.loci));
  }
  if (config.entities < 2) {
    throw ValidationError("entities: must be at least 2, got " +
                          std::to_string(config.entities));
  }
  if (config.generations < 1) {
    throw ValidationError("generations: must be at least 1, got " +
                          std::to_string(config.generations));
  }
  if (config.additive_effects.size() != 1 &&
      config.additive_effects.size() != static_cast<std::size_t>(config.loci)) {
    throw ValidationError("additive_effects: need 1 or " + std::to_string(config.loci) +
                          " values, got " + std::to_string(config.additive_effects.size()));
  }
  for (double s : config.additive_effects) {
    if (!std::isfinite(s)) throw ValidationError("additive_effects: entries must be finite");
  }
  if (!std::isfinite(config.epistasis_magnitude) || config.epistasis_magnitude < 0.0) {
    throw ValidationError("epistasis_magnitude: must be finite and nonnegative");
  }
  if (!std::isfinite(config.environment_shift)) {
    throw ValidationError("environment_shift: must be finite");
  }
}

SimulationResult simulate(const SimulationConfig& config) {
  validate(config);
  const Index m = config.entities;
  const Index n = config.loci;
  SeededRng rng(config.seed);

  // Draw order is part of the replay contract: genotypes row by row, then
  // the upper-triangle epistasis coefficients.
  Mat design(m, n + 1);
  design.col(0) = Vec::Ones(m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 1; i <= n; ++i) {
      design(j, i) = rng.bernoulli(0.5) ? 1.0 : 0.0;
    }
  }
  Mat epistasis = Mat::Zero(n + 1, n + 1);
  for (Index i = 1; i <= n; ++i) {
    for (Index k = i + 1; k <= n; ++k) {
      epistasis(i, k) =
          rng.uniform(-config.epistasis_magnitude, config.epistasis_magnitude);
    }
  }

  Vec effects(n + 1);
  effects[0] = 0.0;
  for (Index i = 1; i <= n; ++i) {
    effects[i] = config.additive_effects.size() == 1
                     ? config.additive_effects[0]
                     : config.additive_effects[static_cast<std::size_t>(i - 1)];
  }

  const DesignMatrix genotypes(std::move(design));
  FrequencyVector frequencies(Vec::Constant(m, 1.0 / static_cast<double>(m)));

  SimulationResult result;
  result.generations.reserve(static_cast<std::size_t>(config.generations));

  for (int t = 0; t < config.generations; ++t) {
    Vec fitness(m);
    for (Index j = 0; j < m; ++j) {
      double w = 1.0;
      for (Index i = 1; i <= n; ++i) {
        const double x = genotypes.values()(j, i);
        if (x == 0.0) continue;
        w += effects[i] + static_cast<double>(t) * config.environment_shift;
        for (Index k = i + 1; k <= n; ++k) {
          w += epistasis(i, k) * genotypes.values()(j, k);
        }
      }
      fitness[j] = std::max(w, 0.0);
    }

    if (compensated_dot(frequencies.weights(), fitness) <= 0.0) {
      result.status = SimulationStatus::stopped_zero_fitness;
      result.stopped_at = t;
      result.message = "mean fitness reached zero at generation " + std::to_string(t);
      return result;
    }

    try {
      HaploidPopulation pop(genotypes, frequencies, std::move(fitness));
      result.generations.push_back(fundamental_theorem_term(pop));
      frequencies = select(pop).frequencies;
    } catch (const RankDeficiencyError& err) {
      result.status = SimulationStatus::stopped_rank_deficient;
      result.stopped_at = t;
      result.message = err.what();
      return result;
    } catch (const ValidationError& err) {
      // degenerate fit, e.g. fewer surviving entities than design columns
      result.status = SimulationStatus::stopped_rank_deficient;
      result.stopped_at = t;
      result.message = err.what();
      return result;
    }
  }
  return result;
}

}  // namespace dzbar
