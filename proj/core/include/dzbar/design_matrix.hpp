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

/// Entity-by-predictor matrix whose column 0 is identically one (the
/// intercept indicator). All entries must be finite.
class DesignMatrix {
 public:
  explicit DesignMatrix(Mat values);

  /// Prepends the intercept column of ones to `predictors`.
  static DesignMatrix with_intercept(const Mat& predictors);

  const Mat& values() const { return values_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }
  Eigen::Ref<const Vec> column(Index i) const { return values_.col(i); }

 private:
  Mat values_;
};

}  // namespace dzbar
