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

/// Nonnegative weights over a population, summing to one.
///
/// Construction rejects weight vectors whose sum is further than 1e-9 from
/// one unless `Normalize::yes` is passed, in which case the weights are
/// divided by their sum. Silent renormalization hides data errors, so it has
/// to be requested. Zero-weight entities are retained in indexing; an
/// all-zero vector is rejected either way.
class FrequencyVector {
 public:
  enum class Normalize { no, yes };

  static constexpr double kSumTolerance = 1e-9;

  explicit FrequencyVector(Vec weights, Normalize normalize = Normalize::no);

  const Vec& weights() const { return weights_; }
  Index size() const { return weights_.size(); }
  double operator[](Index j) const { return weights_[j]; }

  /// Number of entities with strictly positive weight.
  Index support_size() const;

 private:
  Vec weights_;
};

}  // namespace dzbar
