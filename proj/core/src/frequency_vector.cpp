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

#include "dzbar/frequency_vector.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dzbar/compensated.hpp"
#include "dzbar/errors.hpp"

namespace dzbar {

FrequencyVector::FrequencyVector(Vec weights, Normalize normalize)
    : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw ValidationError("FrequencyVector: empty weight vector");
  }
  for (Index j = 0; j < weights_.size(); ++j) {
    const double w = weights_[j];
    if (!std::isfinite(w)) {
      throw ValidationError("FrequencyVector: weight at index " + std::to_string(j) +
                            " is not finite");
    }
    if (w < 0.0) {
      throw ValidationError("FrequencyVector: weight at index " + std::to_string(j) +
                            " is negative (" + std::to_string(w) + ")");
    }
  }
  const double sum = compensated_sum(weights_);
  if (sum <= 0.0) {
    throw ValidationError("FrequencyVector: weights sum to zero");
  }
  if (normalize == Normalize::yes) {
    weights_ /= sum;
  } else if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ValidationError("FrequencyVector: weights sum to " + std::to_string(sum) +
                          ", not 1; pass Normalize::yes to rescale");
  }
}

Index FrequencyVector::support_size() const {
  Index n = 0;
  for (Index j = 0; j < weights_.size(); ++j) {
    if (weights_[j] > 0.0) ++n;
  }
  return n;
}

}  // namespace dzbar
