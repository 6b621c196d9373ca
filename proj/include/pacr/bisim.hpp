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

#include "pacr/pa.hpp"

namespace pacr {

// True when `r` is stable: for every transition s -a-> mu and every t in the
// class of s, t can weakly perform `a` reaching mu's class lift with
// intermediates inside the class.
bool is_branching_bisimulation(const PA& pa, const EquivRel& r);

// The coarsest stable partition, computed by refinement from the universal
// relation: a class splits whenever one of its witness transitions is not
// matchable by every member.
EquivRel coarsest_branching_bisim(const PA& pa);

// Initial states equivalent in the disjoint union.
bool pa_bisimilar(const PA& a, const PA& b);

}  // namespace pacr
