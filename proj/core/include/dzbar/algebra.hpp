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

#include "dzbar/types.hpp"

namespace dzbar {

/// A quantity observed in two contexts; `changed` plays the role of the
/// primed value in a finite difference.
struct DeltaPair {
  Vec initial;
  Vec changed;

  /// Validates equal lengths and finite entries.
  DeltaPair(Vec initial_value, Vec changed_value);

  Vec delta() const { return changed - initial; }
};

/// Exact two-term split of the change in a dot product:
///   total = b·Δx + x'·Δb = b'·x' − b·x.
struct ProductRuleTerms {
  double holding_coefficients;  // b · Δx
  double coefficient_change;    // x' · Δb
  double total;
};

/// First-order differential approximation of Δ(b·x) and the exact
/// second-order remainder that the differential limit drops.
struct DifferentialTerms {
  double first_order;  // b·dx + x·db
  double remainder;    // dx·db
};

/// Compensated dot product. Throws DimensionError on length mismatch.
double dot(const Vec& a, const Vec& b);

ProductRuleTerms product_rule_delta(const DeltaPair& coefficients, const DeltaPair& values);

DifferentialTerms differential_remainder(const Vec& b, const Vec& db, const Vec& x, const Vec& dx);

}  // namespace dzbar
