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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace dzbar {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input values violate a documented precondition (non-finite entries,
/// negative weights, frequencies that do not sum to one, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The weighted design matrix is rank deficient. Carries the offending
/// column indices so callers can name them in diagnostics.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(const std::string& what, std::vector<Eigen::Index> dependent)
      : Error(what), dependent_columns_(std::move(dependent)) {}

  const std::vector<Eigen::Index>& dependent_columns() const { return dependent_columns_; }

 private:
  std::vector<Eigen::Index> dependent_columns_;
};

/// An identity that must hold failed to do so, or the inputs describe an
/// impossible state (e.g. an allele gaining frequency from zero).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace dzbar
