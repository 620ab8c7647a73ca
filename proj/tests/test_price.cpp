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

#include <dzbar/errors.hpp>
#include <dzbar/price.hpp>
#include <dzbar/regression.hpp>
#include <dzbar/rng.hpp>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace dzbar;

TEST_CASE("static population partitions to zero") {
  SeededRng rng(201);
  const Index n = 6;
  const FrequencyVector q = gen::frequencies(rng, n);
  const Vec z = gen::vector(rng, n);
  const PairedPopulation pop(FrequencyVector(q.weights()), FrequencyVector(q.weights()), z, z);
  const PricePartition p = price_partition(pop);
  CHECK(p.selection_term == 0.0);
  CHECK(p.transmission_term == 0.0);
  CHECK(p.total == 0.0);
}

TEST_CASE("constant values leave only the selection term") {
  SeededRng rng(203);
  const Index n = 8;
  const FrequencyVector q = gen::frequencies(rng, n);
  const FrequencyVector q_changed = gen::frequencies(rng, n);
  const Vec z = gen::vector(rng, n);
  const PairedPopulation pop(FrequencyVector(q.weights()), FrequencyVector(q_changed.weights()),
                             z, z);
  const PricePartition p = price_partition(pop);
  CHECK(p.transmission_term == 0.0);
  CHECK(std::abs(p.total - p.selection_term) <= 1e-14 * std::max(1.0, std::abs(p.total)));
}

TEST_CASE("random eight-entity instance: total is the direct mean difference") {
  SeededRng rng(207);
  for (int c = 0; c < 100; ++c) {
    const PairedPopulation pop = gen::paired_population(rng, 8);
    const PricePartition p = price_partition(pop);
    const double direct = static_cast<double>(
        oracle::dot(pop.frequencies_changed.weights(), pop.values_changed) -
        oracle::dot(pop.frequencies_initial.weights(), pop.values_initial));
    const double scale = std::max(1.0, std::abs(direct));
    CHECK(std::abs(p.total - direct) <= 1e-12 * scale);
    CHECK(std::abs(p.selection_term + p.transmission_term - direct) <= 1e-12 * scale);
  }
}

TEST_CASE("neutral fitness: no selection term, total is the mean value change") {
  SeededRng rng(211);
  const Index n = 5;
  Vec q_exact(n);  // dyadic, sums to one exactly, so w̄ = 1 bit for bit
  q_exact << 0.25, 0.25, 0.25, 0.125, 0.125;
  const FrequencyVector q(q_exact);
  const Vec z = gen::vector(rng, n);
  const Vec z_changed = gen::vector(rng, n);
  const PairedPopulation pop(FrequencyVector(q.weights()), FrequencyVector(q.weights()), z,
                             z_changed, Vec(Vec::Ones(n)));
  const PricePartition p = price_covariance_form(pop);
  CHECK(p.selection_term == 0.0);
  const double expected = dzbar::weighted_mean(Vec(z_changed - z), q);
  CHECK(std::abs(p.transmission_term - expected) <= 1e-13 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("fitness as the trait: total is its variance") {
  SeededRng rng(213);
  const Index n = 10;
  const FrequencyVector q = gen::frequencies(rng, n);
  Vec w(n);
  for (Index j = 0; j < n; ++j) w[j] = rng.uniform(0.2, 1.8);
  const Vec scaled = normalize_fitness(w, q);
  const Vec q_changed = q.weights().cwiseProduct(scaled);
  const PairedPopulation pop(FrequencyVector(q.weights()), FrequencyVector(Vec(q_changed)),
                             scaled, scaled, Vec(scaled));
  const PricePartition p = price_covariance_form(pop);
  const double variance = weighted_covariance(scaled, scaled, q);
  CHECK(std::abs(p.total - variance) <= 1e-12 * std::max(1.0, variance));
  CHECK(std::abs(p.selection_term - variance) <= 1e-12 * std::max(1.0, variance));
  CHECK(p.transmission_term == 0.0);
}

TEST_CASE("both forms agree term by term when change is fitness-driven") {
  SeededRng rng(217);
  for (int c = 0; c < 100; ++c) {
    const Index n = 2 + static_cast<Index>(rng.uniform01() * 30);
    const PairedPopulation pop = gen::paired_population(rng, n);
    const PricePartition dot_form = price_partition(pop);
    const PricePartition cov_form = price_covariance_form(pop);
    const double scale =
        std::max({1.0, std::abs(dot_form.selection_term), std::abs(dot_form.transmission_term)});
    CHECK(std::abs(dot_form.selection_term - cov_form.selection_term) <= 1e-12 * scale);
    CHECK(std::abs(dot_form.transmission_term - cov_form.transmission_term) <= 1e-12 * scale);
    CHECK(std::abs(dot_form.total - cov_form.total) <= 1e-12 * scale);
  }
}

TEST_CASE("normalize_fitness") {
  Vec q2(2);
  q2 << 0.5, 0.5;
  const FrequencyVector q(q2);

  // already mean one: returned unchanged, bit for bit
  Vec w(2);
  w << 2.0, 0.0;
  const Vec same = normalize_fitness(w, q);
  CHECK(same[0] == 2.0);
  CHECK(same[1] == 0.0);

  Vec twos(2);
  twos << 2.0, 2.0;
  const Vec halved = normalize_fitness(twos, q);
  CHECK(halved[0] == 1.0);
  CHECK(halved[1] == 1.0);

  SeededRng rng(219);
  for (int c = 0; c < 50; ++c) {
    const Index n = 2 + static_cast<Index>(rng.uniform01() * 40);
    const FrequencyVector weights = gen::frequencies(rng, n);
    Vec fitness(n);
    for (Index j = 0; j < n; ++j) fitness[j] = rng.uniform(0.0, 3.0);
    const Vec scaled = normalize_fitness(fitness, weights);
    CHECK(std::abs(weighted_mean(scaled, weights) - 1.0) <= 1e-15);
  }

  CHECK_THROWS_AS(normalize_fitness(Vec::Zero(2), q), ValidationError);
  Vec negative(2);
  negative << 1.0, -1.0;
  CHECK_THROWS_AS(normalize_fitness(negative, q), ValidationError);
}

TEST_CASE("PairedPopulation validates lengths and fitness consistency") {
  SeededRng rng(223);
  CHECK_THROWS_AS(PairedPopulation(gen::frequencies(rng, 3), gen::frequencies(rng, 4),
                                   Vec::Zero(3), Vec::Zero(3)),
                  DimensionError);

  // q' inconsistent with fitness
  const Index n = 4;
  const FrequencyVector q = gen::frequencies(rng, n);
  Vec w(n);
  for (Index j = 0; j < n; ++j) w[j] = rng.uniform(0.5, 1.5);
  const Vec scaled = normalize_fitness(w, q);
  Vec q_changed = q.weights().cwiseProduct(scaled);
  q_changed[0] += 1e-6;
  q_changed[1] -= 1e-6;
  CHECK_THROWS_AS(PairedPopulation(FrequencyVector(q.weights()), FrequencyVector(q_changed),
                                   Vec::Zero(n), Vec::Zero(n), Vec(scaled)),
                  ValidationError);

  CHECK_THROWS_AS(price_covariance_form(PairedPopulation(
                      FrequencyVector(q.weights()), FrequencyVector(q.weights()),
                      Vec::Zero(n), Vec::Zero(n))),
                  ValidationError);
}

TEST_CASE("extinct entities are allowed and carry zero transmission weight") {
  Vec q(3), w(3);
  q << 0.5, 0.25, 0.25;
  w << 1.5, 1.0, 0.0;  // entity 2 dies
  const FrequencyVector freq(q);
  const Vec scaled = normalize_fitness(w, freq);
  const Vec q_changed = q.cwiseProduct(scaled);
  Vec z(3), z_changed(3);
  z << 1.0, 2.0, 3.0;
  z_changed << 1.0, 2.0, 99.0;  // arbitrary value for the extinct entity
  const PairedPopulation pop(FrequencyVector(q), FrequencyVector(Vec(q_changed)), z, z_changed,
                             Vec(scaled));
  CHECK(pop.frequencies_changed[2] == 0.0);
  const PricePartition dot_form = price_partition(pop);
  const PricePartition cov_form = price_covariance_form(pop);
  // the z' of the extinct entity never enters
  CHECK(dot_form.transmission_term == 0.0);
  CHECK(cov_form.transmission_term == 0.0);
}

TEST_CASE("rescaling the trait rescales every term") {
  SeededRng rng(227);
  const PairedPopulation pop = gen::paired_population(rng, 12);
  const PricePartition base = price_partition(pop);

  // powers of two rescale exactly
  const double c = 4.0;
  const PairedPopulation scaled(FrequencyVector(pop.frequencies_initial.weights()),
                                FrequencyVector(pop.frequencies_changed.weights()),
                                Vec(c * pop.values_initial), Vec(c * pop.values_changed),
                                pop.fitness);
  const PricePartition rescaled = price_partition(scaled);
  CHECK(rescaled.selection_term == c * base.selection_term);
  CHECK(rescaled.transmission_term == c * base.transmission_term);
  CHECK(rescaled.total == c * base.total);

  // a general constant rescales to rounding
  const double g = 3.7;
  const PairedPopulation scaled_g(FrequencyVector(pop.frequencies_initial.weights()),
                                  FrequencyVector(pop.frequencies_changed.weights()),
                                  Vec(g * pop.values_initial), Vec(g * pop.values_changed),
                                  pop.fitness);
  const PricePartition rescaled_g = price_partition(scaled_g);
  CHECK(rescaled_g.total ==
        doctest::Approx(g * base.total).epsilon(1e-13));
}
