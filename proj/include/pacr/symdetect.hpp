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

#include "pacr/lppe.hpp"

namespace pacr {

// A proof obligation for commutation of summand pair (i, j): whenever both
// guards hold, either both instances coincide (only possible for i == j), or
// executing i first leaves j's guard, action, and weight intact and the two
// execution orders reach the same state.  Variables of the two copies are
// renamed apart ("'i" / "'j" suffixes); i's probabilistic binders are
// replaced by their unique values.
struct ConfluenceObligation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<VarDecl> binders;  // renamed quantified binders with sorts
  ExprPtr hypothesis;
  ExprPtr conclusion;
};

enum class DischargeMethod {
  GuardContradiction,    // hypothesis refuted by constant analysis
  VariableDisjointness,  // read/write sets of i and j do not meet
  SelfCommutation,       // i == j, no nondeterministic binders, Dirac target
};

struct DischargeResult {
  bool proven = false;
  std::optional<DischargeMethod> method;
};

// Summands that are internal and syntactically deterministic: the
// probabilistic bundle has at most one combination, or the weight is the
// literal one.
std::vector<std::size_t> candidate_summands(const LppeSpec& spec);

// Requires i to be a candidate summand.
ConfluenceObligation obligation(const LppeSpec& spec, std::size_t i,
                                std::size_t j);

// Tries the heuristics in order: guard contradiction, variable
// disjointness, self-commutation.
DischargeResult discharge(const LppeSpec& spec, std::size_t i, std::size_t j);

// Candidates whose obligations against every summand are discharged.
std::vector<std::size_t> detect_confluent_summands(const LppeSpec& spec);

struct PairReport {
  std::size_t i;
  std::size_t j;
  DischargeResult result;
};
std::vector<PairReport> detection_report(const LppeSpec& spec);

// SMT-LIB style rendering of the obligation's negation, as an extension
// point for external solvers.
std::string obligation_smt(const LppeSpec& spec,
                           const ConfluenceObligation& ob);

}  // namespace pacr
