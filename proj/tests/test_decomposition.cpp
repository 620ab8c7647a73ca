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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <dzbar/algebra.hpp>
#include <dzbar/decomposition.hpp>
#include <dzbar/errors.hpp>
#include <dzbar/fisher.hpp>
#include <dzbar/price.hpp>
#include <dzbar/rng.hpp>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace dzbar;

namespace {

// Oracle: evaluate both terms of the two-term split from scratch, with
// long-double fits and long-double dot products.
struct OracleSplit {
  double coefficients_fixed;
  double coefficient_change;
  double total;
};

OracleSplit oracle_initial_reference(const ContextData& initial, const ContextData& changed) {
  const Vec b = oracle::normal_equations_fit_vec(initial.design.values(), initial.outcome,
                                                 initial.frequencies.weights());
  const Vec b_changed = oracle::normal_equations_fit_vec(changed.design.values(), changed.outcome,
                                                         changed.frequencies.weights());
  const Index k = b.size();
  Vec mean_initial(k), mean_changed(k);
  for (Index i = 0; i < k; ++i) {
    mean_initial[i] = static_cast<double>(
        oracle::weighted_mean(Vec(initial.design.column(i)), initial.frequencies.weights()));
    mean_changed[i] = static_cast<double>(
        oracle::weighted_mean(Vec(changed.design.column(i)), changed.frequencies.weights()));
  }
  OracleSplit split{};
  split.coefficients_fixed = static_cast<double>(oracle::dot(b, Vec(mean_changed - mean_initial)));
  split.coefficient_change = static_cast<double>(oracle::dot(mean_changed, Vec(b_changed - b)));
  split.total = static_cast<double>(
      oracle::weighted_mean(changed.outcome, changed.frequencies.weights()) -
      oracle::weighted_mean(initial.outcome, initial.frequencies.weights()));
  return split;
}

double term_sum(const DecompositionReport& r) {
  double s = r.coefficients_fixed_term + r.coefficient_change_term;
  if (r.interaction_term) s += *r.interaction_term;
  return s;
}

}  // namespace

TEST_CASE("identical contexts decompose to exactly zero") {
  SeededRng rng(101);
  const ContextData a = gen::context(rng, 12, 2, "a");
  const ContextData b(DesignMatrix(a.design.values()), a.outcome,
                      FrequencyVector(a.frequencies.weights()), "b");
  for (Convention conv :
       {Convention::initial_reference, Convention::changed_reference, Convention::threefold}) {
    const DecompositionReport r = decompose_mean_change(a, b, conv);
    CHECK(r.total_change == 0.0);
    CHECK(r.coefficients_fixed_term == 0.0);
    CHECK(r.coefficient_change_term == 0.0);
    if (r.interaction_term) CHECK(*r.interaction_term == 0.0);
  }
}

TEST_CASE("exactly linear outcome forces the coefficient-change term to zero") {
  // Same entities and outcome, different frequencies. Because z is exactly
  // linear in the design, both fits recover the same coefficients and only
  // the coefficients-fixed term survives.
  SeededRng rng(103);
  const DesignMatrix x = gen::design(rng, 10, 2);
  Vec beta(3);
  beta << 1.0, -2.0, 0.5;
  const Vec z = x.values() * beta;
  const ContextData initial(DesignMatrix(x.values()), z, gen::frequencies(rng, 10), "initial");
  const ContextData changed(DesignMatrix(x.values()), z, gen::frequencies(rng, 10), "changed");

  const DecompositionReport r = decompose_mean_change(initial, changed);
  CHECK(std::abs(r.coefficient_change_term) <= 1e-12);
  CHECK(std::abs(r.coefficients_fixed_term - r.total_change) <=
        1e-12 * std::max(1.0, std::abs(r.total_change)));
}

TEST_CASE("six-entity synthetic pair matches the independent two-fit oracle") {
  SeededRng rng(107);
  const ContextData initial = gen::context(rng, 6, 2, "initial");
  const ContextData changed = gen::context(rng, 6, 2, "changed");
  const DecompositionReport r = decompose_mean_change(initial, changed);
  const OracleSplit expected = oracle_initial_reference(initial, changed);

  const double scale = std::max(1.0, std::abs(expected.total));
  CHECK(std::abs(r.total_change - expected.total) <= 1e-10 * scale);
  CHECK(std::abs(r.coefficients_fixed_term - expected.coefficients_fixed) <= 1e-10 * scale);
  CHECK(std::abs(r.coefficient_change_term - expected.coefficient_change) <= 1e-10 * scale);
}

TEST_CASE("per-predictor contributions sum to their terms") {
  SeededRng rng(109);
  for (Convention conv :
       {Convention::initial_reference, Convention::changed_reference, Convention::threefold}) {
    const ContextData initial = gen::context(rng, 15, 3, "initial");
    const ContextData changed = gen::context(rng, 18, 3, "changed");
    const DecompositionReport r = decompose_mean_change(initial, changed, conv);

    double fixed = 0.0, change = 0.0, interaction = 0.0;
    for (const PredictorContribution& c : r.per_predictor) {
      fixed += c.coefficients_fixed;
      change += c.coefficient_change;
      interaction += c.interaction;
    }
    CHECK(std::abs(fixed - r.coefficients_fixed_term) <=
          1e-12 * std::max(1.0, std::abs(r.coefficients_fixed_term)));
    CHECK(std::abs(change - r.coefficient_change_term) <=
          1e-12 * std::max(1.0, std::abs(r.coefficient_change_term)));
    if (r.interaction_term) {
      CHECK(std::abs(interaction - *r.interaction_term) <=
            1e-12 * std::max(1.0, std::abs(*r.interaction_term)));
    }
  }
}

TEST_CASE("intercept contributes nothing to the coefficients-fixed term") {
  SeededRng rng(113);
  const ContextData initial = gen::context(rng, 9, 2, "initial");
  const ContextData changed = gen::context(rng, 11, 2, "changed");
  const DecompositionReport r = decompose_mean_change(initial, changed);
  CHECK(r.predictor_means_initial[0] == 1.0);
  CHECK(r.predictor_means_changed[0] == 1.0);
  CHECK(r.per_predictor[0].coefficients_fixed == 0.0);
  const double delta_b0 = r.coefficients_changed[0] - r.coefficients_initial[0];
  CHECK(r.per_predictor[0].coefficient_change == delta_b0);
}

TEST_CASE("single-predictor model: the breakdown is the whole term") {
  SeededRng rng(127);
  const ContextData initial = gen::context(rng, 8, 1, "initial");
  const ContextData changed = gen::context(rng, 8, 1, "changed");
  const DecompositionReport r = decompose_mean_change(initial, changed);
  CHECK(r.per_predictor[1].coefficients_fixed ==
        doctest::Approx(r.coefficients_fixed_term).epsilon(1e-14));
}

TEST_CASE("closure holds for every convention on random pairs") {
  SeededRng rng(131);
  for (int c = 0; c < 60; ++c) {
    const Index k = 1 + static_cast<Index>(rng.uniform01() * 4);
    const Index m1 = k + 4 + static_cast<Index>(rng.uniform01() * 30);
    const Index m2 = k + 4 + static_cast<Index>(rng.uniform01() * 30);
    const ContextData initial = gen::context(rng, m1, k, "initial");
    const ContextData changed = gen::context(rng, m2, k, "changed");

    double previous_total = 0.0;
    bool first = true;
    for (Convention conv :
         {Convention::initial_reference, Convention::changed_reference, Convention::threefold}) {
      const DecompositionReport r = decompose_mean_change(initial, changed, conv);
      const double scale = std::max(1.0, std::abs(r.total_change));
      CHECK(std::abs(term_sum(r) - r.total_change) <= 1e-10 * scale);
      CHECK(std::abs(r.closure_error) <= 1e-10 * scale);
      if (!first) CHECK(r.total_change == previous_total);  // same data, same total
      previous_total = r.total_change;
      first = false;
    }

    // threefold interaction is Δx̄ · Δb
    const DecompositionReport r3 = decompose_mean_change(initial, changed, Convention::threefold);
    const double interaction = dot(Vec(r3.predictor_means_changed - r3.predictor_means_initial),
                                   Vec(r3.coefficients_changed - r3.coefficients_initial));
    CHECK(std::abs(*r3.interaction_term - interaction) <=
          1e-12 * std::max(1.0, std::abs(interaction)));
  }
}

TEST_CASE("swapping the contexts negates the total change") {
  SeededRng rng(137);
  const ContextData a = gen::context(rng, 14, 2, "a");
  const ContextData b = gen::context(rng, 17, 2, "b");
  const DecompositionReport forward = decompose_mean_change(a, b);
  const DecompositionReport backward = decompose_mean_change(b, a);
  CHECK(forward.total_change == -backward.total_change);
}

TEST_CASE("on genotype data the coefficients-fixed term is the fisher term") {
  SeededRng rng(139);
  for (int c = 0; c < 20; ++c) {
    const HaploidPopulation pop = gen::population(rng, 3, 24, c % 2 == 1);
    const SelectionSummary s = fundamental_theorem_term(pop);
    const HaploidPopulation after = select(pop);
    const Vec scaled = normalize_fitness(pop.fitness, pop.frequencies);

    const ContextData initial(DesignMatrix(pop.genotypes.values()), scaled,
                              FrequencyVector(pop.frequencies.weights()), "before");
    const ContextData changed(DesignMatrix(pop.genotypes.values()), scaled,
                              FrequencyVector(after.frequencies.weights()), "after");
    const DecompositionReport r = decompose_mean_change(initial, changed);
    CHECK(std::abs(r.coefficients_fixed_term - s.ftns_term) <=
          1e-10 * std::max(1.0, std::abs(s.ftns_term)));
  }
}

TEST_CASE("predictor schema mismatch is rejected") {
  SeededRng rng(149);
  const ContextData two = gen::context(rng, 10, 2, "two");
  const ContextData three = gen::context(rng, 10, 3, "three");
  CHECK_THROWS_AS(decompose_mean_change(two, three), DimensionError);
}

TEST_CASE("ContextData validates row counts") {
  SeededRng rng(151);
  const DesignMatrix x = gen::design(rng, 5, 2);
  CHECK_THROWS_AS(ContextData(DesignMatrix(x.values()), Vec::Zero(4),
                              gen::frequencies(rng, 5), "bad"),
                  DimensionError);
}
