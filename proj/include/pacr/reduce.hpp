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

#include "pacr/confluence.hpp"
#include "pacr/pa.hpp"

namespace pacr {

// Maps every state to a canonical representative: the smallest-id state of
// the unique terminal strongly connected subgraph of its component in the
// designated-step graph.  Every state reaches its representative via
// designated steps.
class RepresentationMap {
 public:
  StateId repr(StateId s) const { return table_.at(s); }
  const std::vector<StateId>& table() const { return table_; }

  friend RepresentationMap representation_map(const PA& pa,
                                              const ConfluentSet& c);

 private:
  std::vector<StateId> table_;
};

// The quotient automaton: one state per class, transitions lifted and
// deduplicated.
PA quotient(const PA& pa, const EquivRel& r);

// Throws NoRepresentationMapError when the designated-step graph has a
// component with two unjoinable terminal subgraphs.
RepresentationMap representation_map(const PA& pa, const ConfluentSet& c);

// The quotient induced by the representation map: states are the
// representatives, designated transitions are dropped, and every other
// transition is re-rooted at its source's representative with targets mapped
// through the representation.
PA quotient_by_representatives(const PA& pa, const ConfluentSet& c);

}  // namespace pacr
