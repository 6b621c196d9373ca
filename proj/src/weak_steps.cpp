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
#include "pacr/weak_steps.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "pacr/simplex.hpp"

namespace pacr {
namespace {

// Internal transitions usable as in-class continuations, and transitions
// usable as labelled exits, for the class containing `s`.
struct ClassMoves {
  std::vector<StateId> members;
  std::unordered_map<StateId, std::size_t> index;  // member -> local row
  std::vector<TransId> conts;
  std::vector<TransId> exits;
};

ClassMoves collect_moves(const PA& pa, const EquivRel& r, StateId s,
                         const std::string& label) {
  ClassMoves m;
  ClassId c = r.class_of(s);
  m.members = r.members(c);
  for (std::size_t i = 0; i < m.members.size(); ++i) m.index[m.members[i]] = i;
  for (StateId u : m.members) {
    for (TransId t : pa.enabled(u)) {
      const auto& tr = pa.transition(t);
      if (tr.label == kTau) {
        bool inside = true;
        for (const auto& [v, p] : tr.dist.support())
          if (r.class_of(v) != c) {
            inside = false;
            break;
          }
        if (inside) m.conts.push_back(t);
      }
      if (tr.label == label) m.exits.push_back(t);
    }
  }
  return m;
}

// Shared LP core.  The exit measure is constrained per key, where the key of
// a target state is either the state itself (exact variant) or its class
// (class-level variant).  With `allow_halt`, one extra column per member lets
// occupation mass terminate in place, delivered to the member's own key.
std::optional<std::vector<Rational>> solve_flow(
    const PA& pa, const ClassMoves& m, StateId s,
    const std::vector<std::pair<StateId, Rational>>& goal,
    bool per_class_keys, const EquivRel& r, bool allow_halt = false) {
  auto key_of = [&](StateId v) {
    return per_class_keys ? r.class_of(v) : v;
  };
  std::unordered_map<StateId, std::size_t> key_row;
  std::vector<StateId> keys;
  auto key_index = [&](StateId k) {
    auto [it, fresh] = key_row.emplace(k, keys.size());
    if (fresh) keys.push_back(k);
    return it->second;
  };
  for (const auto& [k, p] : goal) key_index(k);
  for (TransId t : m.exits)
    for (const auto& [v, p] : pa.transition(t).dist.support())
      key_index(key_of(v));
  if (allow_halt)
    for (StateId u : m.members) key_index(key_of(u));

  const std::size_t nc = m.conts.size(), ne = m.exits.size();
  const std::size_t nh = allow_halt ? m.members.size() : 0;
  const std::size_t rows = m.members.size() + keys.size();
  std::vector<std::vector<Rational>> a(
      rows, std::vector<Rational>(nc + ne + nh, Rational(0)));
  std::vector<Rational> b(rows, Rational(0));

  // Conservation: outgoing occupation equals injection plus incoming
  // continuation mass, at every class member.
  for (std::size_t j = 0; j < nc; ++j) {
    const auto& tr = pa.transition(m.conts[j]);
    a[m.index.at(tr.source)][j] += 1;
    for (const auto& [v, p] : tr.dist.support()) a[m.index.at(v)][j] -= p;
  }
  for (std::size_t j = 0; j < ne; ++j) {
    const auto& tr = pa.transition(m.exits[j]);
    a[m.index.at(tr.source)][nc + j] += 1;
  }
  for (std::size_t j = 0; j < nh; ++j) a[j][nc + ne + j] += 1;
  b[m.index.at(s)] = 1;

  // Exit measure: mass delivered to each key must match the goal exactly.
  for (std::size_t j = 0; j < ne; ++j) {
    const auto& tr = pa.transition(m.exits[j]);
    for (const auto& [v, p] : tr.dist.support())
      a[m.members.size() + key_row.at(key_of(v))][nc + j] += p;
  }
  for (std::size_t j = 0; j < nh; ++j)
    a[m.members.size() + key_row.at(key_of(m.members[j]))][nc + ne + j] += 1;
  for (const auto& [k, p] : goal) b[m.members.size() + key_row.at(k)] = p;

  return solve_equality_feasibility(std::move(a), std::move(b));
}

}  // namespace

std::optional<WeakStepWitness> decide_weak_branching_step(
    const PA& pa, const EquivRel& r, StateId s, const std::string& label,
    const Distribution& mu) {
  if (s >= pa.num_states()) throw Error("state out of range");
  for (const auto& [v, p] : mu.support()) r.class_of(v);  // carrier check
  if (label == kTau && mu.is_dirac() && mu.dirac_target() == s)
    return WeakStepWitness{s, label, {}, {}, mu};

  ClassMoves m = collect_moves(pa, r, s, label);
  auto x = solve_flow(pa, m, s, mu.support(), /*per_class_keys=*/false, r);
  if (!x) return std::nullopt;
  WeakStepWitness w{s, label, {}, {}, mu};
  for (std::size_t j = 0; j < m.conts.size(); ++j)
    if ((*x)[j] != 0) w.continue_flow.emplace_back(m.conts[j], (*x)[j]);
  for (std::size_t j = 0; j < m.exits.size(); ++j)
    if ((*x)[m.conts.size() + j] != 0)
      w.exit_flow.emplace_back(m.exits[j], (*x)[m.conts.size() + j]);
  return w;
}

bool validate_witness(const PA& pa, const EquivRel& r,
                      const WeakStepWitness& w) {
  if (w.start >= pa.num_states()) return false;
  if (w.trivial())
    return w.label == kTau && w.final.is_dirac() &&
           w.final.dirac_target() == w.start;

  ClassId c = r.class_of(w.start);
  std::unordered_map<StateId, Rational> in, out;
  for (const auto& [t, f] : w.continue_flow) {
    if (f < 0 || t >= pa.num_transitions()) return false;
    const auto& tr = pa.transition(t);
    if (tr.label != kTau || r.class_of(tr.source) != c) return false;
    for (const auto& [v, p] : tr.dist.support()) {
      if (r.class_of(v) != c) return false;
      in[v] += f * p;
    }
    out[tr.source] += f;
  }
  std::unordered_map<StateId, Rational> delivered;
  for (const auto& [t, f] : w.exit_flow) {
    if (f < 0 || t >= pa.num_transitions()) return false;
    const auto& tr = pa.transition(t);
    if (tr.label != w.label || r.class_of(tr.source) != c) return false;
    out[tr.source] += f;
    for (const auto& [v, p] : tr.dist.support()) delivered[v] += f * p;
  }
  in[w.start] += 1;
  for (StateId u : r.members(c)) {
    Rational lhs = out.count(u) ? out[u] : Rational(0);
    Rational rhs = in.count(u) ? in[u] : Rational(0);
    if (lhs != rhs) return false;
  }
  for (const auto& [v, p] : delivered)
    if (w.final.probability(v) != p) return false;
  for (const auto& [v, p] : w.final.support())
    if (!delivered.count(v) || delivered[v] != p) return false;
  return true;
}

namespace {

bool weak_step_mod_r_impl(const PA& pa, const EquivRel& r, StateId s,
                          const std::string& label, const Distribution& mu_hat,
                          bool allow_halt) {
  ClassId c = r.class_of(s);
  if (label == kTau && mu_hat.is_dirac() && mu_hat.dirac_target() == c)
    return true;
  // Direct single-step match needs no flow analysis.
  for (TransId t : pa.enabled(s)) {
    const auto& tr = pa.transition(t);
    if (tr.label == label && lift_dist(tr.dist, r) == mu_hat) return true;
  }

  ClassMoves m = collect_moves(pa, r, s, label);
  if (m.exits.empty()) return false;

  if (mu_hat.is_dirac()) {
    // Halting mass would land in the class of `s`, which is not the target
    // here (that case is the stutter shortcut above), so the strict analysis
    // applies either way.  All exit mass must land in one class, so
    // feasibility reduces to
    // almost-sure reachability of a usable exit inside the class: the
    // standard alternating fixpoint on the induced sub-MDP.
    ClassId d = mu_hat.dirac_target();
    std::vector<TransId> usable;
    for (TransId t : m.exits) {
      bool ok = true;
      for (const auto& [v, p] : pa.transition(t).dist.support())
        if (r.class_of(v) != d) {
          ok = false;
          break;
        }
      if (ok) usable.push_back(t);
    }
    if (usable.empty()) return false;
    std::unordered_set<StateId> exit_here;
    for (TransId t : usable) exit_here.insert(pa.transition(t).source);

    std::unordered_set<StateId> bad;
    for (;;) {
      // Backward closure towards usable exits, allowing only continuations
      // whose entire support avoids the current bad set.
      std::unordered_set<StateId> reach;
      bool grew = true;
      for (StateId u : m.members)
        if (exit_here.count(u) && !bad.count(u)) reach.insert(u);
      while (grew) {
        grew = false;
        for (TransId t : m.conts) {
          const auto& tr = pa.transition(t);
          if (reach.count(tr.source) || bad.count(tr.source)) continue;
          bool allowed = true, touches = false;
          for (const auto& [v, p] : tr.dist.support()) {
            if (bad.count(v)) allowed = false;
            if (reach.count(v)) touches = true;
          }
          if (allowed && touches) {
            reach.insert(tr.source);
            grew = true;
          }
        }
      }
      std::unordered_set<StateId> newbad;
      for (StateId u : m.members)
        if (!reach.count(u)) newbad.insert(u);
      if (newbad == bad) return !bad.count(s);
      bad = std::move(newbad);
    }
  }

  return solve_flow(pa, m, s, mu_hat.support(), /*per_class_keys=*/true, r,
                    allow_halt && label == kTau)
      .has_value();
}

}  // namespace

bool weak_step_mod_r(const PA& pa, const EquivRel& r, StateId s,
                     const std::string& label, const Distribution& mu_hat) {
  return weak_step_mod_r_impl(pa, r, s, label, mu_hat, /*allow_halt=*/false);
}

bool weak_step_mod_r_halting(const PA& pa, const EquivRel& r, StateId s,
                             const std::string& label,
                             const Distribution& mu_hat) {
  return weak_step_mod_r_impl(pa, r, s, label, mu_hat, /*allow_halt=*/true);
}

}  // namespace pacr
