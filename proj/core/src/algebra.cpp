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

#include "dzbar/algebra.hpp"

#include <string>
#include <utility>

#include "dzbar/compensated.hpp"
#include "dzbar/errors.hpp"

namespace dzbar {

namespace {

void require_same_length(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": lengths " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()) + " do not match");
  }
}

}  // namespace

DeltaPair::DeltaPair(Vec initial_value, Vec changed_value)
    : initial(std::move(initial_value)), changed(std::move(changed_value)) {
  require_same_length(initial, changed, "DeltaPair");
  if (!initial.allFinite() || !changed.allFinite()) {
    throw ValidationError("DeltaPair: entries must be finite");
  }
}

double dot(const Vec& a, const Vec& b) {
  require_same_length(a, b, "dot");
  return compensated_dot(a, b);
}

ProductRuleTerms product_rule_delta(const DeltaPair& coefficients, const DeltaPair& values) {
  require_same_length(coefficients.initial, values.initial, "product_rule_delta");
  ProductRuleTerms terms{};
  terms.holding_coefficients = compensated_dot(coefficients.initial, values.delta());
  terms.coefficient_change = compensated_dot(values.changed, coefficients.delta());
  terms.total = terms.holding_coefficients + terms.coefficient_change;
  return terms;
}

DifferentialTerms differential_remainder(const Vec& b, const Vec& db, const Vec& x,
                                         const Vec& dx) {
  require_same_length(b, db, "differential_remainder");
  require_same_length(b, x, "differential_remainder");
  require_same_length(x, dx, "differential_remainder");
  DifferentialTerms terms{};
  terms.first_order = compensated_dot(b, dx) + compensated_dot(x, db);
  terms.remainder = compensated_dot(dx, db);
  return terms;
}

}  // namespace dzbar
