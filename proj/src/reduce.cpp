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
#include "pacr/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pacr {

PA quotient(const PA& pa, const EquivRel& r) {
  if (r.size() != pa.num_states())
    throw CarrierMismatchError("relation carrier does not match state set");
  PA q;
  for (ClassId c = 0; c < r.num_classes(); ++c) {
    StateId rep = *std::min_element(r.members(c).begin(), r.members(c).end());
    q.add_state(pa.state_name(rep));
  }
  q.set_initial(r.class_of(pa.initial()));
  std::set<std::pair<std::pair<ClassId, std::string>,
                     std::vector<std::pair<StateId, Rational>>>>
      seen;
  for (const auto& tr : pa.transitions()) {
    Distribution lifted = lift_dist(tr.dist, r);
    ClassId src = r.class_of(tr.source);
    if (seen.emplace(std::make_pair(src, tr.label), lifted.support()).second)
      q.add_transition(src, tr.label, lifted);
  }
  return q;
}

RepresentationMap representation_map(const PA& pa, const ConfluentSet& c) {
  auto res = joinability(pa, c);
  if (std::holds_alternative<JoinabilityCounterexample>(res)) {
    const auto& cex = std::get<JoinabilityCounterexample>(res);
    throw NoRepresentationMapError(
        "states " + pa.state_name(cex.a) + " and " + pa.state_name(cex.b) +
        " share a component but have no common descendant");
  }
  const EquivRel& r = std::get<EquivRel>(res);
  auto desc = confluent_descendants(pa, c);

  // Within a component, terminal states are exactly those whose descendant
  // set is contained in the descendant set of each of their descendants;
  // equivalently, states on a cycle through every maximal path.  Using the
  // closure directly: s is in the terminal subgraph iff every descendant of s
  // can reach s back.
  std::vector<std::vector<bool>> reaches(pa.num_states(),
                                         std::vector<bool>(pa.num_states()));
  for (StateId s = 0; s < pa.num_states(); ++s)
    for (StateId t : desc[s]) reaches[s][t] = true;

  RepresentationMap m;
  m.table_.resize(pa.num_states());
  std::vector<StateId> rep_of_class(r.num_classes(), pa.num_states());
  for (ClassId k = 0; k < r.num_classes(); ++k) {
    StateId rep = pa.num_states();
    for (StateId s : r.members(k)) {
      bool terminal = true;
      for (StateId t : desc[s])
        if (!reaches[t][s]) {
          terminal = false;
          break;
        }
      if (terminal && s < rep) rep = s;
    }
    rep_of_class[k] = rep;
  }
  for (StateId s = 0; s < pa.num_states(); ++s) {
    StateId rep = rep_of_class[r.class_of(s)];
    // Post-validation of the defining properties.
    if (rep >= pa.num_states() || !reaches[s][rep])
      throw NoRepresentationMapError("representative unreachable from " +
                                     pa.state_name(s));
    m.table_[s] = rep;
  }
  return m;
}

PA quotient_by_representatives(const PA& pa, const ConfluentSet& c) {
  RepresentationMap m = representation_map(pa, c);
  std::vector<StateId> reps;
  for (StateId s = 0; s < pa.num_states(); ++s)
    if (m.repr(s) == s) reps.push_back(s);

  PA q;
  std::map<StateId, StateId> renum;
  for (StateId s : reps) renum[s] = q.add_state(pa.state_name(s));
  q.set_initial(renum.at(m.repr(pa.initial())));

  std::set<std::pair<std::pair<StateId, std::string>,
                     std::vector<std::pair<StateId, Rational>>>>
      seen;
  for (TransId t = 0; t < pa.num_transitions(); ++t) {
    if (c.contains(t)) continue;
    const auto& tr = pa.transition(t);
    std::vector<std::pair<StateId, Rational>> w;
    for (const auto& [v, p] : tr.dist.support())
      w.emplace_back(renum.at(m.repr(v)), p);
    Distribution mapped = Distribution::from_weights(std::move(w));
    StateId src = renum.at(m.repr(tr.source));
    if (seen.emplace(std::make_pair(src, tr.label), mapped.support()).second)
      q.add_transition(src, tr.label, mapped);
  }
  return q;
}

}  // namespace pacr
