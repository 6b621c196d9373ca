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

#include <cstdint>
#include <string>
#include <vector>

#include "pacr/lppe.hpp"
#include "pacr/pa.hpp"

namespace pacr {

struct GenStats {
  std::uint64_t states = 0;
  std::uint64_t transitions = 0;
  // Work actually performed: for a reduced run this includes the states and
  // steps touched while resolving representatives, not only what was stored.
  std::uint64_t visited_states = 0;
  std::uint64_t visited_transitions = 0;
  double wall_time_ms = 0;
};

std::string stats_json(const GenStats& stats);

struct GenOptions {
  std::size_t state_cap = 2'000'000;
  std::size_t enum_cap = 1'000'000;
  bool depth_first = false;  // exploration order; the result set is the same
};

// State-cap overflow carries the partial statistics.
struct StateCapError : ResourceCapError {
  StateCapError(const std::string& what, GenStats partial)
      : ResourceCapError(what), partial(partial) {}
  GenStats partial;
};

struct GenResult {
  PA pa;
  std::vector<Valuation> valuations;            // per state
  std::vector<std::size_t> transition_summand;  // per transition
  GenStats stats;
};

// Full state-space exploration from the initial valuation.
GenResult explore(const LppeSpec& spec, const GenOptions& opt = {});

// Reduced exploration: successors are stored as encountered, but a state is
// expanded through its representative, found by chasing enabled transitions
// of the designated summands; only the representative's other transitions
// are emitted.  Designated summands must yield Dirac internal steps.
GenResult explore_reduced(const LppeSpec& spec,
                          const std::vector<std::size_t>& confluent,
                          const GenOptions& opt = {});

}  // namespace pacr
