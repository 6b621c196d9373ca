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
// Shared helpers for the test suites: paths to the bundled corpus, seeded
// random generators for automata and process descriptions, and the two
// property suites that are also run by the acceptance gate.
#pragma once

#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pacr/bisim.hpp"
#include "pacr/confluence.hpp"
#include "pacr/gen.hpp"
#include "pacr/lppe.hpp"
#include "pacr/pa.hpp"
#include "pacr/reduce.hpp"
#include "pacr/symdetect.hpp"

namespace pacr_test {

inline std::string fixture(const std::string& name) {
  return std::string(PACR_ROOT) + "/fixtures/" + name;
}
inline std::string model(const std::string& name) {
  return std::string(PACR_ROOT) + "/models/" + name;
}

using Rng = std::mt19937;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// A random automaton with at most `max_states` states and `max_trans`
// transitions.  Labels come from a tiny alphabet with a bias towards tau so
// that designated sets are usually non-empty; distributions are Dirac or
// split 1/2 + 1/2 or 1/3 + 2/3.
inline pacr::PA random_pa(Rng& rng, std::size_t max_states = 8,
                          std::size_t max_trans = 12) {
  using namespace pacr;
  PA pa;
  std::size_t n = 2 + pick(rng, max_states - 1);
  for (std::size_t i = 0; i < n; ++i) pa.add_state("q" + std::to_string(i));
  pa.set_initial(0);
  static const char* labels[] = {"tau", "tau", "tau", "a", "b"};
  std::size_t m = 1 + pick(rng, max_trans);
  for (std::size_t k = 0; k < m; ++k) {
    StateId src = static_cast<StateId>(pick(rng, n));
    const char* label = labels[pick(rng, 5)];
    Distribution dist;
    switch (pick(rng, 3)) {
      case 0:
        dist = Distribution::dirac(static_cast<StateId>(pick(rng, n)));
        break;
      case 1:
        dist = Distribution::from_weights(
            {{static_cast<StateId>(pick(rng, n)), Rational(1, 2)},
             {static_cast<StateId>(pick(rng, n)), Rational(1, 2)}});
        break;
      default:
        dist = Distribution::from_weights(
            {{static_cast<StateId>(pick(rng, n)), Rational(1, 3)},
             {static_cast<StateId>(pick(rng, n)), Rational(2, 3)}});
        break;
    }
    pa.add_transition(src, label, std::move(dist));
  }
  return pa;
}

// All transitions eligible for a designated set: internal and Dirac.
inline std::vector<pacr::TransId> tau_dirac_transitions(const pacr::PA& pa) {
  std::vector<pacr::TransId> out;
  for (pacr::TransId t = 0; t < pa.num_transitions(); ++t) {
    const auto& tr = pa.transition(t);
    if (tr.label == pacr::kTau && tr.dist.is_dirac()) out.push_back(t);
  }
  return out;
}

// A random subset of the eligible transitions (possibly empty).
inline std::vector<pacr::TransId> random_designated(
    Rng& rng, const std::vector<pacr::TransId>& eligible) {
  std::vector<pacr::TransId> out;
  for (pacr::TransId t : eligible)
    if (pick(rng, 2) == 0) out.push_back(t);
  return out;
}

struct SuiteResult {
  std::size_t cases = 0;       // automata (or specs) examined
  std::size_t checks = 0;      // individual property checks performed
  std::size_t violations = 0;
  std::string first_violation;

  void violation(const std::string& what) {
    ++violations;
    if (first_violation.empty()) first_violation = what;
  }
};

// Property suite over random automata:
//  - the implication chain strong => plain => weak confluence,
//  - closure of each notion under union,
//  - endpoints of weakly confluent steps are branching-bisimilar,
//  - equivalence up to designated steps implies class-lifted equality under
//    the joinability relation.
inline SuiteResult run_confluence_properties(std::size_t num_pas,
                                             unsigned seed = 20260824) {
  using namespace pacr;
  Rng rng(seed);
  SuiteResult res;
  for (std::size_t it = 0; it < num_pas; ++it) {
    PA pa = random_pa(rng);
    ++res.cases;
    std::vector<TransId> eligible = tau_dirac_transitions(pa);
    if (eligible.empty()) continue;

    std::vector<std::vector<TransId>> weak_sets, plain_sets, strong_sets;
    std::vector<std::vector<TransId>> candidates;
    candidates.push_back(eligible);
    for (TransId t : eligible) candidates.push_back({t});
    for (int k = 0; k < 4; ++k)
      candidates.push_back(random_designated(rng, eligible));

    for (const auto& members : candidates) {
      if (members.empty()) continue;
      ConfluentSet c = ConfluentSet::create(pa, members);
      bool strong = is_strongly_confluent(pa, c);
      bool plain = is_confluent(pa, c);
      bool weak = is_weakly_confluent(pa, c);
      ++res.checks;
      if (strong && !plain) res.violation("strong set not plainly confluent");
      if (plain && !weak) res.violation("plain set not weakly confluent");
      if (weak) weak_sets.push_back(members);
      if (plain) plain_sets.push_back(members);
      if (strong) strong_sets.push_back(members);
    }

    auto union_closed = [&](const std::vector<std::vector<TransId>>& sets,
                            auto&& check, const char* notion) {
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
          std::set<TransId> u(sets[i].begin(), sets[i].end());
          u.insert(sets[j].begin(), sets[j].end());
          ConfluentSet c =
              ConfluentSet::create(pa, {u.begin(), u.end()});
          ++res.checks;
          if (!check(pa, c))
            res.violation(std::string("union not closed for ") + notion);
        }
    };
    union_closed(strong_sets, [](const PA& p, const ConfluentSet& c) {
      return is_strongly_confluent(p, c);
    }, "strong");
    union_closed(plain_sets, [](const PA& p, const ConfluentSet& c) {
      return is_confluent(p, c);
    }, "plain");
    union_closed(weak_sets, [](const PA& p, const ConfluentSet& c) {
      return is_weakly_confluent(p, c);
    }, "weak");

    // Endpoints of weakly confluent steps lie in one bisimulation class.
    EquivRel bisim;
    bool have_bisim = false;
    for (const auto& members : weak_sets) {
      if (!have_bisim) {
        bisim = coarsest_branching_bisim(pa);
        have_bisim = true;
      }
      for (TransId t : members) {
        const auto& tr = pa.transition(t);
        ++res.checks;
        if (!bisim.same_class(tr.source, tr.dist.dirac_target()))
          res.violation("confluent step endpoints not bisimilar");
      }
    }

    // Under a joinable designated set, matching up to designated steps
    // implies equality of the class lifts.
    for (const auto& members : weak_sets) {
      ConfluentSet c = ConfluentSet::create(pa, members);
      JoinabilityResult j = joinability(pa, c);
      const EquivRel* rel = std::get_if<EquivRel>(&j);
      if (!rel) continue;
      // Constructed positives: pull a transition's distribution backwards
      // through direct designated edges.
      std::map<StateId, std::vector<StateId>> preds;
      for (TransId t : members) {
        const auto& tr = pa.transition(t);
        preds[tr.dist.dirac_target()].push_back(tr.source);
      }
      for (const auto& tr : pa.transitions()) {
        const Distribution& nu = tr.dist;
        std::vector<std::pair<StateId, Rational>> weights;
        bool ok = true;
        for (const auto& [t, p] : nu.support()) {
          auto it = preds.find(t);
          if (it == preds.end()) {
            ok = false;
            break;
          }
          weights.emplace_back(it->second[pick(rng, it->second.size())], p);
        }
        if (!ok) continue;
        Distribution mu = Distribution::from_weights(std::move(weights));
        ++res.checks;
        if (equiv_up_to_confluent(pa, c, mu, nu)) {
          if (!dist_eq_mod_r(mu, nu, *rel))
            res.violation("matched distributions differ on classes");
        } else if (mu == nu) {
          // mu == nu trivially lifts equally; no claim otherwise.
        }
        // Random pairs exercise the implication in the other direction too.
        if (equiv_up_to_confluent(pa, c, nu, mu) &&
            !dist_eq_mod_r(nu, mu, *rel))
          res.violation("matched distributions differ on classes");
      }
    }
  }
  return res;
}

// A random well-formed process description: three small globals and a few
// summands with constant assignments, some internal and deterministic.
inline std::string random_lppe_text(Rng& rng) {
  std::ostringstream out;
  out << "process P(x: {1..3} := 1, y: {1..3} := 1, b: bool := false)\n";
  std::size_t num = 3 + pick(rng, 3);
  for (std::size_t i = 0; i < num; ++i) {
    // Guard: a comparison on x or y, optionally conjoined with b or !b.
    const char* var = pick(rng, 2) ? "x" : "y";
    const char* rel = pick(rng, 2) ? "=" : "<=";
    out << var << " " << rel << " " << (1 + pick(rng, 3));
    switch (pick(rng, 3)) {
      case 0: out << " && b"; break;
      case 1: out << " && !b"; break;
      default: break;
    }
    bool internal = pick(rng, 2) == 0;
    out << " => " << (internal ? "tau" : "act") << " . ";
    if (!internal && pick(rng, 2)) {
      // Occasionally a probabilistic visible step.
      out << "psum k: {1..2} of 1/2 . P(x := k)\n";
      continue;
    }
    out << "P(";
    bool first = true;
    auto assign = [&](const char* name, const std::string& value) {
      if (!first) out << ", ";
      first = false;
      out << name << " := " << value;
    };
    if (pick(rng, 2)) assign("x", std::to_string(1 + pick(rng, 3)));
    if (pick(rng, 2)) assign("y", std::to_string(1 + pick(rng, 3)));
    if (pick(rng, 2)) assign("b", pick(rng, 2) ? "true" : "false");
    out << ")\n";
  }
  return out.str();
}

// Soundness suite: every summand reported confluent must instantiate to
// transitions forming a strongly confluent set of the explored automaton.
inline SuiteResult run_symdetect_soundness(std::size_t num_specs,
                                           unsigned seed = 20260824) {
  using namespace pacr;
  Rng rng(seed);
  SuiteResult res;

  auto check_spec = [&](const LppeSpec& spec, const std::string& what) {
    ++res.cases;
    std::vector<std::size_t> detected = detect_confluent_summands(spec);
    GenOptions opt;
    opt.state_cap = 100'000;
    GenResult full = explore(spec, opt);
    std::set<std::size_t> designated(detected.begin(), detected.end());
    std::vector<TransId> members;
    for (TransId t = 0; t < full.pa.num_transitions(); ++t)
      if (designated.count(full.transition_summand[t])) members.push_back(t);
    ++res.checks;
    if (!members.empty() &&
        !is_strongly_confluent(full.pa, ConfluentSet::create(full.pa, members)))
      res.violation("detected summands not strongly confluent in " + what);
  };

  for (const char* name : {"leader.lppe", "leader2.lppe", "example4.lppe"})
    check_spec(parse_lppe_file(model(name)), name);
  for (std::size_t i = 0; i < num_specs; ++i)
    check_spec(parse_lppe(random_lppe_text(rng)),
               "random spec " + std::to_string(i));
  return res;
}

// Keep only the designated transitions at states where one is enabled, then
// restrict to the reachable part.  This mimics giving internal steps priority
// without any confluence justification, and is intentionally unsound.
inline pacr::PA prioritized_reduction(const pacr::PA& pa,
                                      const std::vector<pacr::TransId>& prio) {
  using namespace pacr;
  std::set<TransId> chosen(prio.begin(), prio.end());
  std::vector<bool> has_prio(pa.num_states(), false);
  for (TransId t : chosen) has_prio[pa.transition(t).source] = true;

  std::vector<StateId> order;
  std::map<StateId, StateId> index;
  std::vector<StateId> work{pa.initial()};
  index[pa.initial()] = 0;
  order.push_back(pa.initial());
  std::vector<std::pair<StateId, const Transition*>> kept;
  for (std::size_t i = 0; i < work.size(); ++i) {
    StateId s = work[i];
    for (TransId t : pa.enabled(s)) {
      if (has_prio[s] && !chosen.count(t)) continue;
      const Transition& tr = pa.transition(t);
      kept.emplace_back(index.at(s), &tr);
      for (const auto& [u, p] : tr.dist.support())
        if (!index.count(u)) {
          index[u] = static_cast<StateId>(order.size());
          order.push_back(u);
          work.push_back(u);
        }
    }
  }
  PA out;
  for (StateId s : order) out.add_state(pa.state_name(s));
  out.set_initial(0);
  for (const auto& [src, tr] : kept) {
    std::vector<std::pair<StateId, Rational>> w;
    for (const auto& [u, p] : tr->dist.support())
      w.emplace_back(index.at(u), p);
    out.add_transition(src, tr->label, Distribution::from_weights(std::move(w)));
  }
  return out;
}

// Structural equality by state names: same named states, same initial state,
// and the same multiset of transitions (source name, label, named support).
inline bool same_named_pa(const pacr::PA& a, const pacr::PA& b) {
  using namespace pacr;
  if (a.num_states() != b.num_states()) return false;
  if (a.num_transitions() != b.num_transitions()) return false;
  auto key = [](const PA& pa) {
    std::multiset<std::string> out;
    for (const auto& tr : pa.transitions()) {
      std::ostringstream line;
      line << pa.state_name(tr.source) << " " << tr.label << " {";
      for (const auto& [u, p] : tr.dist.support())
        line << " " << pa.state_name(u) << ":" << to_string(p);
      line << " }";
      out.insert(line.str());
    }
    return out;
  };
  for (StateId s = 0; s < a.num_states(); ++s)
    if (!b.has_state(a.state_name(s))) return false;
  if (a.state_name(a.initial()) != b.state_name(b.initial())) return false;
  return key(a) == key(b);
}

}  // namespace pacr_test
