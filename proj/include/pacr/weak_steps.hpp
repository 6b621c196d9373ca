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
#include <string>
#include <vector>

#include "pacr/pa.hpp"

namespace pacr {

// Certificate for a weak step with internal prefix confined to the start
// state's equivalence class.  The flows are expected occupation masses of a
// memoryless randomized scheduler: `continue_flow` over internal transitions
// whose support stays inside the class, `exit_flow` over transitions carrying
// the step's label.  A trivial witness (both flows empty) certifies the
// stutter case: an internal step to the Dirac distribution on the start state
// itself.
struct WeakStepWitness {
  StateId start = 0;
  std::string label;
  std::vector<std::pair<TransId, Rational>> continue_flow;
  std::vector<std::pair<TransId, Rational>> exit_flow;
  Distribution final;

  bool trivial() const { return continue_flow.empty() && exit_flow.empty(); }
};

// Decides whether `s` can weakly perform `label` reaching exactly `mu`, with
// every intermediate state in the class of `s` under `r` and all scheduled
// runs ending with the labelled step.  Encoded as exact-rational feasibility
// of the occupation-flow equations; returns a witness when feasible.
std::optional<WeakStepWitness> decide_weak_branching_step(
    const PA& pa, const EquivRel& r, StateId s, const std::string& label,
    const Distribution& mu);

// Independent re-validation of a witness: structural side conditions plus the
// conservation and exit-measure equations, recomputed from scratch.
bool validate_witness(const PA& pa, const EquivRel& r,
                      const WeakStepWitness& w);

// Class-level variant used by the bisimulation checker: `mu_hat` is a
// distribution over the class ids of `r`, and exit mass is only constrained
// per class.  Uses graph fixpoints for Dirac targets and the LP otherwise.
bool weak_step_mod_r(const PA& pa, const EquivRel& r, StateId s,
                     const std::string& label, const Distribution& mu_hat);

// Relaxed variant used by partition refinement.  For an internal step, part
// of the mass may stop inside the class of `s` without firing a transition,
// counting towards the class's own share of `mu_hat`.  This is the closure of
// the strict step under mixing with the stutter case; it is what a state can
// actually reproduce when mimicking an equivalent state's weak step answer by
// answer, so refining against it never separates equivalent states.
bool weak_step_mod_r_halting(const PA& pa, const EquivRel& r, StateId s,
                             const std::string& label,
                             const Distribution& mu_hat);

}  // namespace pacr
