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

#include <map>
#include <utility>
#include <vector>

#include "pacr/pa.hpp"

namespace pacr {

// A randomized choice after some history: a probability of halting plus
// probabilities for taking enabled transitions.  Masses sum to one.
struct SchedulerChoice {
  Rational stop = 1;
  std::vector<std::pair<TransId, Rational>> picks;

  static SchedulerChoice halt() { return {}; }
  static SchedulerChoice take(TransId t) { return {Rational(0), {{t, 1}}}; }
};

// A partial randomized scheduler with finite explicit domain.  Choices may be
// keyed by a full path or, as a convenience, by the path's last state
// (memoryless entries).  Path-specific entries take precedence; the default
// choice is to halt.
class FiniteScheduler {
 public:
  // Both setters validate the choice against the enabled transitions of the
  // relevant state and check the mass is one.
  void set_choice(const PA& pa, const Path& path, SchedulerChoice choice);
  void set_memoryless(const PA& pa, StateId s, SchedulerChoice choice);

  const SchedulerChoice& choice(const Path& path) const;

  // Longest explicit path key (0 when only memoryless entries exist).
  std::size_t max_explicit_length() const { return max_explicit_len_; }

 private:
  using PathKey = std::pair<StateId, std::vector<std::pair<TransId, StateId>>>;
  std::map<PathKey, SchedulerChoice> by_path_;
  std::map<StateId, SchedulerChoice> by_state_;
  std::size_t max_explicit_len_ = 0;
};

// The probability that the scheduler generates exactly this step sequence:
// the product over steps of choice mass times branch mass.
Rational path_probability(const PA& pa, const FiniteScheduler& sched,
                          const Path& path);

// The distribution over final states: each maximal scheduled path contributes
// its probability times the halting mass at its end.  Throws
// NotFinitelyEnumerableError when the scheduler keeps cycling with positive
// probability and the path set is infinite.
SubDistribution final_distribution(const PA& pa, const FiniteScheduler& sched,
                                   StateId start);

}  // namespace pacr
