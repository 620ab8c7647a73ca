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

#include "dzbar/algebra.hpp"
#include "dzbar/decomposition.hpp"
#include "dzbar/errors.hpp"
#include "dzbar/fisher.hpp"
#include "dzbar/price.hpp"
#include "dzbar/regression.hpp"
#include "dzbar/simulate.hpp"
#include "dzbar/version.hpp"
