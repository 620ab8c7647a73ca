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

#include <cmath>

#include "dzbar/types.hpp"

namespace dzbar {

// Error-free transforms (Knuth two-sum, FMA two-product) and the compensated
// reductions built on them. All identity-closure tolerances in this library
// are stated independent of vector length, so sums and dot products route
// through here instead of plain left-to-right accumulation.

struct TwoSum {
  double value;
  double error;
};

inline TwoSum two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline TwoSum two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Running sum with a separate compensation term (Kahan-Babuska/Neumaier).
class CompensatedSum {
 public:
  void add(double x) {
    const TwoSum t = two_sum(sum_, x);
    sum_ = t.value;
    compensation_ += t.error;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Dot product in twofold working precision: every product and every partial
/// sum carries its rounding error forward.
inline double compensated_dot(const Eigen::Ref<const Vec>& a, const Eigen::Ref<const Vec>& b) {
  double sum = 0.0;
  double compensation = 0.0;
  const Index n = a.size();
  for (Index i = 0; i < n; ++i) {
    const TwoSum p = two_prod(a[i], b[i]);
    const TwoSum s = two_sum(sum, p.value);
    sum = s.value;
    compensation += s.error + p.error;
  }
  return sum + compensation;
}

inline double compensated_sum(const Eigen::Ref<const Vec>& v) {
  CompensatedSum acc;
  for (Index i = 0; i < v.size(); ++i) acc.add(v[i]);
  return acc.value();
}

}  // namespace dzbar
