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
#include "pacr/confluence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace pacr {
namespace {

// Adjacency over designated edges.
std::vector<std::vector<StateId>> edges_of(const PA& pa,
                                           const ConfluentSet& c) {
  std::vector<std::vector<StateId>> adj(pa.num_states());
  for (TransId t : c.members()) {
    const auto& tr = pa.transition(t);
    adj[tr.source].push_back(tr.dist.dirac_target());
  }
  return adj;
}

}  // namespace

ConfluentSet ConfluentSet::create(const PA& pa, std::vector<TransId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (TransId t : members) {
    if (t >= pa.num_transitions())
      throw InvalidConfluentSetError("transition id out of range");
    const auto& tr = pa.transition(t);
    if (tr.label != kTau)
      throw InvalidConfluentSetError("designated transition is not internal");
    if (!tr.dist.is_dirac())
      throw InvalidConfluentSetError("designated transition is not Dirac");
  }
  ConfluentSet c;
  c.members_ = std::move(members);
  return c;
}

bool ConfluentSet::contains(TransId t) const {
  return std::binary_search(members_.begin(), members_.end(), t);
}

std::vector<std::vector<StateId>> confluent_descendants(const PA& pa,
                                                        const ConfluentSet& c) {
  auto adj = edges_of(pa, c);
  std::vector<std::vector<StateId>> desc(pa.num_states());
  for (StateId s = 0; s < pa.num_states(); ++s) {
    std::vector<bool> seen(pa.num_states(), false);
    std::deque<StateId> q{s};
    seen[s] = true;
    while (!q.empty()) {
      StateId u = q.front();
      q.pop_front();
      desc[s].push_back(u);
      for (StateId v : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          q.push_back(v);
        }
    }
  }
  return desc;
}

std::optional<std::vector<StateId>> confluent_path(const PA& pa,
                                                   const ConfluentSet& c,
                                                   StateId from, StateId to) {
  auto adj = edges_of(pa, c);
  std::vector<StateId> parent(pa.num_states(), from);
  std::vector<bool> seen(pa.num_states(), false);
  std::deque<StateId> q{from};
  seen[from] = true;
  while (!q.empty()) {
    StateId u = q.front();
    q.pop_front();
    if (u == to) {
      std::vector<StateId> path{to};
      while (path.back() != from) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (StateId v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = u;
        q.push_back(v);
      }
  }
  return std::nullopt;
}

JoinabilityResult joinability(const PA& pa, const ConfluentSet& c) {
  const std::size_t n = pa.num_states();
  auto adj = edges_of(pa, c);

  // Iterative Tarjan.
  std::vector<int> idx(n, -1), low(n, 0), scc(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  int counter = 0, num_scc = 0;
  for (StateId root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<std::pair<StateId, std::size_t>> call{{root, 0}};
    while (!call.empty()) {
      auto& [u, ei] = call.back();
      if (ei == 0) {
        idx[u] = low[u] = counter++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      if (ei < adj[u].size()) {
        StateId v = adj[u][ei++];
        if (idx[v] == -1)
          call.emplace_back(v, 0);
        else if (on_stack[v])
          low[u] = std::min(low[u], idx[v]);
      } else {
        if (low[u] == idx[u]) {
          for (;;) {
            StateId w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc[w] = num_scc;
            if (w == u) break;
          }
          ++num_scc;
        }
        StateId done = u;
        call.pop_back();
        if (!call.empty())
          low[call.back().first] =
              std::min(low[call.back().first], low[done]);
      }
    }
  }

  std::vector<bool> terminal(num_scc, true);
  for (StateId u = 0; u < n; ++u)
    for (StateId v : adj[u])
      if (scc[u] != scc[v]) terminal[scc[u]] = false;

  // Weak components via union-find over edges.
  std::vector<StateId> parent(n);
  for (StateId s = 0; s < n; ++s) parent[s] = s;
  std::function<StateId(StateId)> find = [&](StateId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (StateId u = 0; u < n; ++u)
    for (StateId v : adj[u]) parent[find(u)] = find(v);

  // One terminal strongly connected subgraph per component, or a witness.
  std::map<StateId, int> term_scc_of_comp;
  for (int sc = 0; sc < num_scc; ++sc) {
    if (!terminal[sc]) continue;
    StateId rep = 0;
    for (StateId s = 0; s < n; ++s)
      if (scc[s] == sc) {
        rep = s;
        break;
      }
    StateId comp = find(rep);
    auto [it, fresh] = term_scc_of_comp.emplace(comp, sc);
    if (!fresh) {
      StateId other = 0;
      for (StateId s = 0; s < n; ++s)
        if (scc[s] == it->second) {
          other = s;
          break;
        }
      return JoinabilityCounterexample{other, rep};
    }
  }

  std::vector<ClassId> class_of(n);
  for (StateId s = 0; s < n; ++s) class_of[s] = find(s);
  return EquivRel::from_class_of(std::move(class_of));
}

bool equiv_up_to_confluent(const PA& pa, const ConfluentSet& c,
                           const Distribution& mu, const Distribution& nu) {
  // Direct designated edges s -> t.
  std::set<std::pair<StateId, StateId>> edge;
  for (TransId t : c.members()) {
    const auto& tr = pa.transition(t);
    edge.emplace(tr.source, tr.dist.dirac_target());
  }

  const auto& targets = nu.support();
  std::vector<std::vector<std::size_t>> cand;
  for (const auto& [s, p] : mu.support()) {
    std::vector<std::size_t> cs;
    for (std::size_t i = 0; i < targets.size(); ++i)
      if (edge.count({s, targets[i].first})) cs.push_back(i);
    if (cs.empty()) return false;
    cand.push_back(std::move(cs));
  }
  // Assign each support state to a block, tightest states first.
  std::vector<std::size_t> order(cand.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cand[a].size() < cand[b].size();
  });
  std::vector<Rational> needed;
  for (const auto& [t, p] : targets) needed.push_back(p);

  std::function<bool(std::size_t)> assign = [&](std::size_t k) {
    if (k == order.size()) {
      for (const auto& r : needed)
        if (r != 0) return false;
      return true;
    }
    std::size_t i = order[k];
    const Rational& mass = mu.support()[i].second;
    for (std::size_t j : cand[i]) {
      if (needed[j] < mass) continue;
      needed[j] -= mass;
      if (assign(k + 1)) return true;
      needed[j] += mass;
    }
    return false;
  };
  return assign(0);
}

ConfluenceVerdict check_strongly_confluent(const PA& pa,
                                           const ConfluentSet& c) {
  for (TransId d : c.members()) {
    const auto& step = pa.transition(d);
    StateId s = step.source, t = step.dist.dirac_target();
    for (TransId u : pa.enabled(s)) {
      const auto& tr = pa.transition(u);
      if (tr.label == kTau && tr.dist.is_dirac() &&
          tr.dist.dirac_target() == t)
        continue;
      bool answered = false;
      for (TransId v : pa.enabled(t)) {
        const auto& an = pa.transition(v);
        if (an.label == tr.label &&
            equiv_up_to_confluent(pa, c, tr.dist, an.dist)) {
          answered = true;
          break;
        }
      }
      if (!answered)
        return {false, ConfluenceCounterexample{{s, t}, u}, std::nullopt};
    }
  }
  return {true, std::nullopt, std::nullopt};
}

namespace {

ConfluenceVerdict check_joinable_notion(const PA& pa, const ConfluentSet& c,
                                        bool answer_from_descendant) {
  auto res = joinability(pa, c);
  if (std::holds_alternative<JoinabilityCounterexample>(res))
    return {false, std::nullopt, std::get<JoinabilityCounterexample>(res)};
  const EquivRel& r = std::get<EquivRel>(res);
  auto desc = confluent_descendants(pa, c);

  for (StateId s = 0; s < pa.num_states(); ++s) {
    for (StateId t : desc[s]) {
      for (TransId u : pa.enabled(s)) {
        const auto& tr = pa.transition(u);
        bool answered = false;
        for (StateId t2 : answer_from_descendant ? desc[t]
                                                 : std::vector<StateId>{t}) {
          if (tr.label == kTau &&
              dist_eq_mod_r(tr.dist, Distribution::dirac(t2), r)) {
            answered = true;
            break;
          }
          for (TransId v : pa.enabled(t2)) {
            const auto& an = pa.transition(v);
            if (an.label == tr.label && dist_eq_mod_r(tr.dist, an.dist, r)) {
              answered = true;
              break;
            }
          }
          if (answered) break;
        }
        if (!answered) {
          auto path = confluent_path(pa, c, s, t);
          return {false, ConfluenceCounterexample{*path, u}, std::nullopt};
        }
      }
    }
  }
  return {true, std::nullopt, std::nullopt};
}

}  // namespace

ConfluenceVerdict check_confluent(const PA& pa, const ConfluentSet& c) {
  return check_joinable_notion(pa, c, /*answer_from_descendant=*/false);
}

ConfluenceVerdict check_weakly_confluent(const PA& pa, const ConfluentSet& c) {
  return check_joinable_notion(pa, c, /*answer_from_descendant=*/true);
}

}  // namespace pacr
