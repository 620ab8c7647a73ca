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

#include "dzbar/design_matrix.hpp"

#include <string>
#include <utility>

#include "dzbar/errors.hpp"

namespace dzbar {

DesignMatrix::DesignMatrix(Mat values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw ValidationError("DesignMatrix: matrix must be non-empty");
  }
  if (!values_.allFinite()) {
    throw ValidationError("DesignMatrix: entries must be finite");
  }
  for (Index j = 0; j < values_.rows(); ++j) {
    if (values_(j, 0) != 1.0) {
      throw ValidationError("DesignMatrix: column 0 must be all ones (row " +
                            std::to_string(j) + " is " + std::to_string(values_(j, 0)) + ")");
    }
  }
}

DesignMatrix DesignMatrix::with_intercept(const Mat& predictors) {
  Mat full(predictors.rows(), predictors.cols() + 1);
  full.col(0) = Vec::Ones(predictors.rows());
  full.rightCols(predictors.cols()) = predictors;
  return DesignMatrix(std::move(full));
}

}  // namespace dzbar
