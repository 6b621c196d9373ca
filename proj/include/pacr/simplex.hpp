/*
 * Copyright 2026 The pacr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <optional>
#include <vector>

#include "pacr/rational.hpp"

namespace pacr {

// Decides feasibility of { A x = b, x >= 0 } over the rationals and returns a
// feasible point if one exists.  Phase-one simplex with Bland's rule, so
// termination is guaranteed and all arithmetic is exact.
std::optional<std::vector<Rational>> solve_equality_feasibility(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace pacr
