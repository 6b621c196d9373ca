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
#include <variant>
#include <vector>

#include "pacr/pa.hpp"

namespace pacr {

// A designated set of internal transitions, each of which must be labelled
// tau and Dirac.  Construction validates both conditions.
class ConfluentSet {
 public:
  static ConfluentSet create(const PA& pa, std::vector<TransId> members);

  const std::vector<TransId>& members() const { return members_; }
  bool contains(TransId t) const;

 private:
  std::vector<TransId> members_;
};

// Reflexive-transitive closure of the designated steps: desc[s] lists every
// state reachable from s via designated transitions (including s itself).
std::vector<std::vector<StateId>> confluent_descendants(const PA& pa,
                                                        const ConfluentSet& c);

// A shortest designated-step path from `from` to `to` (state sequence, both
// endpoints included), or nullopt if unreachable.
std::optional<std::vector<StateId>> confluent_path(const PA& pa,
                                                   const ConfluentSet& c,
                                                   StateId from, StateId to);

// Two states in the same weak component of the designated-step graph with no
// common descendant.
struct JoinabilityCounterexample {
  StateId a;
  StateId b;
};

// Joinability of the designated-step graph: if every weak component has a
// single terminal strongly connected subgraph, the components form an
// equivalence relation over all states; otherwise two unjoinable states are
// reported.
using JoinabilityResult = std::variant<EquivRel, JoinabilityCounterexample>;
JoinabilityResult joinability(const PA& pa, const ConfluentSet& c);

// Distribution equivalence up to designated steps: the support of `mu` can be
// partitioned into blocks, one per support state of `nu`, with matching
// masses, such that every block member has a direct designated edge to its
// block's target.
bool equiv_up_to_confluent(const PA& pa, const ConfluentSet& c,
                           const Distribution& mu, const Distribution& nu);

struct ConfluenceCounterexample {
  std::vector<StateId> path;  // designated-step path from s to t
  TransId unmatched;          // transition of s that t cannot answer
};

struct ConfluenceVerdict {
  bool ok = false;
  std::optional<ConfluenceCounterexample> counterexample;
  std::optional<JoinabilityCounterexample> unjoinable;
};

// Strongest notion: every transition of the source of a designated step is
// answered directly at the target, up to designated steps.
ConfluenceVerdict check_strongly_confluent(const PA& pa, const ConfluentSet& c);
// Every transition of s is answered at each designated descendant t, with
// target distributions equal modulo the joinability relation.
ConfluenceVerdict check_confluent(const PA& pa, const ConfluentSet& c);
// As above, but the answer may come from any designated descendant of t.
ConfluenceVerdict check_weakly_confluent(const PA& pa, const ConfluentSet& c);

inline bool is_strongly_confluent(const PA& pa, const ConfluentSet& c) {
  return check_strongly_confluent(pa, c).ok;
}
inline bool is_confluent(const PA& pa, const ConfluentSet& c) {
  return check_confluent(pa, c).ok;
}
inline bool is_weakly_confluent(const PA& pa, const ConfluentSet& c) {
  return check_weakly_confluent(pa, c).ok;
}

}  // namespace pacr
