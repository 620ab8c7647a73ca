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
#include <dzbar/errors.hpp>
#include <dzbar/rng.hpp>

#include "support/oracles.hpp"
#include "support/generators.hpp"

using namespace dzbar;

namespace {

double rel_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("dot: hand-checked values") {
  CHECK(dot(vec3(1, 2, 3), vec3(4, 5, 6)) == 32.0);
  CHECK(dot(vec3(7, -2, 0.5), Vec::Zero(3)) == 0.0);
}

TEST_CASE("dot: length mismatch throws") {
  CHECK_THROWS_AS(dot(Vec::Zero(3), Vec::Zero(4)), DimensionError);
}

TEST_CASE("dot: 1000-element vectors match a long-double oracle") {
  SeededRng rng(101);
  const Vec a = gen::vector(rng, 1000);
  const Vec b = gen::vector(rng, 1000);
  const double expected = static_cast<double>(oracle::dot(a, b));
  CHECK(std::abs(dot(a, b) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("product rule: scalar case expanded by hand") {
  // b: 2 -> 3, x: 3 -> 4. Delta(bx) = 12 - 6 = 6, split 2*1 + 4*1.
  const DeltaPair b{Vec::Constant(1, 2.0), Vec::Constant(1, 3.0)};
  const DeltaPair x{Vec::Constant(1, 3.0), Vec::Constant(1, 4.0)};
  const ProductRuleTerms terms = product_rule_delta(b, x);
  CHECK(terms.holding_coefficients == 2.0);
  CHECK(terms.coefficient_change == 4.0);
  CHECK(terms.total == 6.0);
}

TEST_CASE("product rule: constant coefficients leave only the value term") {
  SeededRng rng(7);
  const Vec b0 = gen::vector(rng, 6);
  const Vec x0 = gen::vector(rng, 6);
  const Vec x1 = gen::vector(rng, 6);
  const ProductRuleTerms terms = product_rule_delta(DeltaPair{b0, b0}, DeltaPair{x0, x1});
  CHECK(terms.coefficient_change == 0.0);
  CHECK(terms.total == terms.holding_coefficients);
  CHECK(std::abs(terms.total - dot(b0, Vec(x1 - x0))) <= 1e-12);
}

TEST_CASE("product rule: random 10-vectors match the direct dot difference") {
  SeededRng rng(11);
  for (int c = 0; c < 200; ++c) {
    const DeltaPair b{gen::vector(rng, 10), gen::vector(rng, 10)};
    const DeltaPair x{gen::vector(rng, 10), gen::vector(rng, 10)};
    const ProductRuleTerms terms = product_rule_delta(b, x);
    const double direct = dot(b.changed, x.changed) - dot(b.initial, x.initial);
    CHECK(std::abs(terms.total - direct) <= 1e-12 * rel_scale(terms.total, direct));
  }
}

TEST_CASE("product rule: closure over random lengths 1..100") {
  SeededRng rng(13);
  for (int c = 0; c < 500; ++c) {
    const Index n = 1 + static_cast<Index>(rng.uniform01() * 100);
    const DeltaPair b{gen::vector(rng, n), gen::vector(rng, n)};
    const DeltaPair x{gen::vector(rng, n), gen::vector(rng, n)};
    const ProductRuleTerms terms = product_rule_delta(b, x);
    const double after = dot(b.changed, x.changed);
    const double before = dot(b.initial, x.initial);
    const double scale = std::max({1.0, std::abs(after), std::abs(before)});
    CHECK(std::abs(terms.total - (after - before)) <= 1e-12 * scale);
  }
}

TEST_CASE("product rule: swapping contexts negates the total") {
  SeededRng rng(17);
  for (int c = 0; c < 100; ++c) {
    const Index n = 1 + static_cast<Index>(rng.uniform01() * 20);
    const DeltaPair b{gen::vector(rng, n), gen::vector(rng, n)};
    const DeltaPair x{gen::vector(rng, n), gen::vector(rng, n)};
    const double forward = product_rule_delta(b, x).total;
    const double backward =
        product_rule_delta(DeltaPair{b.changed, b.initial}, DeltaPair{x.changed, x.initial}).total;
    CHECK(std::abs(forward + backward) <= 1e-12 * std::max(1.0, std::abs(forward)));
  }
}

TEST_CASE("differential remainder: no perturbation gives (0, 0)") {
  const Vec b = vec3(1, 2, 3);
  const Vec x = vec3(-1, 0.5, 2);
  const DifferentialTerms t = differential_remainder(b, Vec::Zero(3), x, Vec::Zero(3));
  CHECK(t.first_order == 0.0);
  CHECK(t.remainder == 0.0);
}

TEST_CASE("differential remainder: first order plus remainder is the exact difference") {
  SeededRng rng(19);
  for (int c = 0; c < 100; ++c) {
    const Index n = 1 + static_cast<Index>(rng.uniform01() * 30);
    const Vec b = gen::vector(rng, n);
    const Vec db = gen::vector(rng, n, -0.5, 0.5);
    const Vec x = gen::vector(rng, n);
    const Vec dx = gen::vector(rng, n, -0.5, 0.5);
    const DifferentialTerms t = differential_remainder(b, db, x, dx);
    const double exact = dot(Vec(b + db), Vec(x + dx)) - dot(b, x);
    CHECK(std::abs(t.first_order + t.remainder - exact) <=
          1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("differential remainder: shrinks quadratically in the step size") {
  SeededRng rng(23);
  const Index n = 12;
  const Vec b = gen::vector(rng, n, 0.5, 1.5);
  const Vec x = gen::vector(rng, n, 0.5, 1.5);
  const Vec db0 = gen::vector(rng, n, 0.5, 1.5);
  const Vec dx0 = gen::vector(rng, n, 0.5, 1.5);
  double previous = 0.0;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const DifferentialTerms t = differential_remainder(b, Vec(h * db0), x, Vec(h * dx0));
    if (previous != 0.0) {
      const double ratio = t.remainder / previous;  // h dropped tenfold
      CHECK(ratio == doctest::Approx(0.01).epsilon(1e-6));
    }
    previous = t.remainder;
  }
}

TEST_CASE("differential remainder: second order relative to first order at h = 1e-4") {
  const double h = 1e-4;
  for (int seed = 0; seed < 100; ++seed) {
    SeededRng rng(1000 + seed);
    const Index n = 2 + static_cast<Index>(rng.uniform01() * 30);
    // well-scaled: positive entries keep the dot products away from zero
    const Vec b = gen::vector(rng, n, 0.5, 1.5);
    const Vec x = gen::vector(rng, n, 0.5, 1.5);
    const Vec db = h * gen::vector(rng, n, 0.5, 1.5);
    const Vec dx = h * gen::vector(rng, n, 0.5, 1.5);
    const DifferentialTerms t = differential_remainder(b, db, x, dx);
    CHECK(std::abs(t.remainder) <= 10.0 * h * std::abs(t.first_order));
  }
}

TEST_CASE("DeltaPair validation") {
  CHECK_THROWS_AS(DeltaPair(Vec::Zero(2), Vec::Zero(3)), DimensionError);
  Vec bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(DeltaPair(bad, Vec::Zero(2)), ValidationError);
  CHECK_THROWS_AS(product_rule_delta(DeltaPair{Vec::Zero(2), Vec::Zero(2)},
                                     DeltaPair{Vec::Zero(3), Vec::Zero(3)}),
                  DimensionError);
}
