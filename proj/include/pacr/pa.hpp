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
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pacr/errors.hpp"
#include "pacr/rational.hpp"

namespace pacr {

using StateId = std::uint32_t;
using TransId = std::uint32_t;
using ClassId = std::uint32_t;

// The distinguished internal action.
inline constexpr const char* kTau = "tau";

// A discrete probability distribution with finite support.  The support is
// kept sorted by state id, entries are strictly positive, and the total mass
// is exactly one (checked on construction).
class Distribution {
 public:
  Distribution() = default;

  static Distribution dirac(StateId target);

  // Merges duplicate entries, drops zero entries, and verifies the mass is
  // exactly one.  Throws InvalidProbabilityError otherwise.
  static Distribution from_weights(
      std::vector<std::pair<StateId, Rational>> weights);

  const std::vector<std::pair<StateId, Rational>>& support() const {
    return support_;
  }
  Rational probability(StateId s) const;
  bool is_dirac() const { return support_.size() == 1; }
  StateId dirac_target() const { return support_.front().first; }

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<std::pair<StateId, Rational>> support_;
};

// Like Distribution but with total mass at most one (the deficit is the
// probability of stopping without a decision).
class SubDistribution {
 public:
  SubDistribution() = default;
  static SubDistribution from_weights(
      std::vector<std::pair<StateId, Rational>> weights);

  const std::vector<std::pair<StateId, Rational>>& support() const {
    return support_;
  }
  Rational probability(StateId s) const;
  Rational total() const;

  bool operator==(const SubDistribution&) const = default;

 private:
  std::vector<std::pair<StateId, Rational>> support_;
};

struct Transition {
  StateId source;
  std::string label;
  Distribution dist;

  bool operator==(const Transition&) const = default;
};

// A probabilistic automaton: states, an initial state, and a set of
// transitions from states to distributions over states.
class PA {
 public:
  StateId add_state(const std::string& name);
  void set_initial(StateId s);
  TransId add_transition(StateId source, const std::string& label,
                         Distribution dist);

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_transitions() const { return transitions_.size(); }
  StateId initial() const { return initial_; }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  // Returns the id of a named state, or throws Error if unknown.
  StateId state_by_name(const std::string& name) const;
  bool has_state(const std::string& name) const {
    return name_index_.count(name) != 0;
  }
  const Transition& transition(TransId t) const { return transitions_.at(t); }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<TransId>& enabled(StateId s) const {
    return outgoing_.at(s);
  }

  // Disjoint union; states of `b` are shifted by a.num_states().  The initial
  // state of the union is the initial state of `a`.
  static PA disjoint_union(const PA& a, const PA& b);

  // Textual fixture format; see docs/README for the grammar.
  static PA parse(std::istream& in);
  static PA parse_file(const std::string& path);
  void print(std::ostream& out) const;
  void write_dot(std::ostream& out) const;

 private:
  std::vector<std::string> state_names_;
  std::unordered_map<std::string, StateId> name_index_;
  StateId initial_ = 0;
  std::vector<Transition> transitions_;
  std::vector<std::vector<TransId>> outgoing_;
};

// An equivalence relation over a carrier {0, ..., n-1}, stored as a partition
// with dense class ids.
class EquivRel {
 public:
  EquivRel() = default;

  static EquivRel identity(std::size_t n);
  static EquivRel single_class(std::size_t n);
  // Class labels are normalised to dense ids ordered by first occurrence.
  static EquivRel from_class_of(std::vector<ClassId> class_of);
  // Blocks must partition {0,...,n-1}; throws CarrierMismatchError otherwise.
  static EquivRel from_blocks(std::size_t n,
                              const std::vector<std::vector<StateId>>& blocks);

  std::size_t size() const { return class_of_.size(); }
  std::size_t num_classes() const { return members_.size(); }
  ClassId class_of(StateId s) const;
  const std::vector<StateId>& members(ClassId c) const {
    return members_.at(c);
  }
  bool same_class(StateId a, StateId b) const {
    return class_of(a) == class_of(b);
  }

  // True if every class of this relation is contained in a class of `other`
  // (i.e. this is a refinement of `other`).  Carriers must agree.
  bool refines(const EquivRel& other) const;

  bool operator==(const EquivRel&) const = default;

 private:
  std::vector<ClassId> class_of_;
  std::vector<std::vector<StateId>> members_;
};

// A finite path: a start state and a sequence of (transition, successor)
// steps, where each successor lies in the support of its transition's
// distribution.
struct Path {
  StateId start = 0;
  std::vector<std::pair<TransId, StateId>> steps;

  StateId last() const {
    return steps.empty() ? start : steps.back().second;
  }
  // Throws Error if a step is not a valid continuation.
  void validate(const PA& pa) const;
};

// The visible action sequence of a path (internal steps omitted).
std::vector<std::string> trace(const PA& pa, const Path& path);

// mu == nu when lifted to the classes of r.  Throws CarrierMismatchError if
// either support mentions a state outside r's carrier.
bool dist_eq_mod_r(const Distribution& mu, const Distribution& nu,
                   const EquivRel& r);

// The distribution over class ids induced by mu.
Distribution lift_dist(const Distribution& mu, const EquivRel& r);

}  // namespace pacr
