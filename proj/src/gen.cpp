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
#include "pacr/gen.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace pacr {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Builder {
  const LppeSpec& spec;
  const GenOptions& opt;
  PA pa;
  std::map<Valuation, StateId> index;
  std::vector<Valuation> valuations;
  std::deque<StateId> queue;
  GenStats stats;
  Clock::time_point t0 = Clock::now();

  StateId intern(const Valuation& v) {
    auto it = index.find(v);
    if (it != index.end()) return it->second;
    if (index.size() >= opt.state_cap) {
      stats.states = index.size();
      stats.wall_time_ms = ms_since(t0);
      throw StateCapError("state cap of " + std::to_string(opt.state_cap) +
                              " states exceeded",
                          stats);
    }
    StateId id = pa.add_state(render_valuation(spec, v));
    index.emplace(v, id);
    valuations.push_back(v);
    queue.push_back(id);
    return id;
  }

  StateId pop() {
    StateId id;
    if (opt.depth_first) {
      id = queue.back();
      queue.pop_back();
    } else {
      id = queue.front();
      queue.pop_front();
    }
    return id;
  }
};

// The single Dirac target of a designated summand instance.
Valuation designated_target(const SummandInstance& inst, std::size_t summand) {
  if (inst.label != kTau)
    throw InvalidConfluentSetError("designated summand " +
                                   std::to_string(summand + 1) +
                                   " is not internal");
  if (inst.dist.size() != 1)
    throw InvalidConfluentSetError("designated summand " +
                                   std::to_string(summand + 1) +
                                   " is not Dirac");
  return inst.dist.front().first;
}

}  // namespace

std::string stats_json(const GenStats& s) {
  std::ostringstream out;
  out << "{\"states\":" << s.states << ",\"transitions\":" << s.transitions
      << ",\"visited_states\":" << s.visited_states
      << ",\"visited_transitions\":" << s.visited_transitions
      << ",\"wall_time_ms\":" << s.wall_time_ms << "}";
  return out.str();
}

GenResult explore(const LppeSpec& spec, const GenOptions& opt) {
  Builder b{spec, opt};
  EnumOptions eopt{opt.enum_cap};
  GenResult res;
  b.intern(initial_valuation(spec));
  b.pa.set_initial(0);
  while (!b.queue.empty()) {
    StateId id = b.pop();
    Valuation v = b.valuations[id];
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
      for (const auto& inst : summand_transitions(spec, v, i, eopt)) {
        std::vector<std::pair<StateId, Rational>> w;
        for (const auto& [tv, p] : inst.dist) w.emplace_back(b.intern(tv), p);
        b.pa.add_transition(id, inst.label,
                            Distribution::from_weights(std::move(w)));
        res.transition_summand.push_back(i);
      }
    }
  }
  b.stats.states = b.pa.num_states();
  b.stats.transitions = b.pa.num_transitions();
  b.stats.visited_states = b.stats.states;
  b.stats.visited_transitions = b.stats.transitions;
  b.stats.wall_time_ms = ms_since(b.t0);
  res.pa = std::move(b.pa);
  res.valuations = std::move(b.valuations);
  res.stats = b.stats;
  return res;
}

GenResult explore_reduced(const LppeSpec& spec,
                          const std::vector<std::size_t>& confluent,
                          const GenOptions& opt) {
  std::set<std::size_t> designated(confluent.begin(), confluent.end());
  for (std::size_t i : designated)
    if (i >= spec.summands.size())
      throw InvalidConfluentSetError("designated summand index out of range");
  Builder b{spec, opt};
  EnumOptions eopt{opt.enum_cap};
  GenResult res;

  // States from which a designated step was chased during resolution.
  std::set<Valuation> chased;
  std::uint64_t chase_steps = 0;

  // Chases the first enabled designated summand until none is enabled.  On a
  // cycle, falls back to an exhaustive walk of the designated subgraph and
  // picks the canonical member of a terminal strongly connected subgraph.
  auto resolve = [&](Valuation v) -> Valuation {
    std::set<Valuation> on_chain;
    for (;;) {
      if (!on_chain.insert(v).second) break;  // cycle: full-subgraph fallback
      bool stepped = false;
      for (std::size_t i : designated) {
        auto insts = summand_transitions(spec, v, i, eopt);
        if (insts.empty()) continue;
        Valuation next = designated_target(insts.front(), i);
        chased.insert(v);
        ++chase_steps;
        v = std::move(next);
        stepped = true;
        break;
      }
      if (!stepped) return v;
    }

    // Cycle fallback: collect the reachable designated subgraph.
    std::map<Valuation, std::vector<Valuation>> adj;
    std::deque<Valuation> work{v};
    adj[v];
    while (!work.empty()) {
      Valuation u = work.front();
      work.pop_front();
      bool any = false;
      for (std::size_t i : designated) {
        for (const auto& inst : summand_transitions(spec, u, i, eopt)) {
          Valuation t = designated_target(inst, i);
          ++chase_steps;
          any = true;
          if (!adj.count(t)) {
            adj[t];
            work.push_back(t);
          }
          adj[u].push_back(std::move(t));
        }
      }
      if (any) chased.insert(u);
    }
    // Tarjan over the collected subgraph.
    std::vector<Valuation> nodes;
    std::map<Valuation, int> node_id;
    for (const auto& [u, _] : adj) {
      node_id.emplace(u, static_cast<int>(nodes.size()));
      nodes.push_back(u);
    }
    int n = static_cast<int>(nodes.size());
    std::vector<int> idx(n, -1), low(n, 0), scc(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int counter = 0, num_scc = 0;
    for (int root = 0; root < n; ++root) {
      if (idx[root] != -1) continue;
      std::vector<std::pair<int, std::size_t>> call{{root, 0}};
      while (!call.empty()) {
        auto& [u, ei] = call.back();
        const auto& edges = adj.at(nodes[u]);
        if (ei == 0) {
          idx[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = true;
        }
        if (ei < edges.size()) {
          int w = node_id.at(edges[ei++]);
          if (idx[w] == -1)
            call.emplace_back(w, 0);
          else if (on_stack[w])
            low[u] = std::min(low[u], idx[w]);
        } else {
          if (low[u] == idx[u]) {
            for (;;) {
              int w = stack.back();
              stack.pop_back();
              on_stack[w] = false;
              scc[w] = num_scc;
              if (w == u) break;
            }
            ++num_scc;
          }
          int done = u;
          call.pop_back();
          if (!call.empty())
            low[call.back().first] =
                std::min(low[call.back().first], low[done]);
        }
      }
    }
    std::vector<bool> terminal(num_scc, true);
    for (int u = 0; u < n; ++u)
      for (const auto& t : adj.at(nodes[u]))
        if (scc[u] != scc[node_id.at(t)]) terminal[scc[u]] = false;
    // Canonical representative: smallest valuation over terminal subgraphs.
    const Valuation* best = nullptr;
    for (int u = 0; u < n; ++u)
      if (terminal[scc[u]] && (!best || nodes[u] < *best)) best = &nodes[u];
    return *best;
  };

  b.intern(initial_valuation(spec));
  b.pa.set_initial(0);
  while (!b.queue.empty()) {
    StateId id = b.pop();
    Valuation rep = resolve(b.valuations[id]);
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
      if (designated.count(i)) continue;
      for (const auto& inst : summand_transitions(spec, rep, i, eopt)) {
        std::vector<std::pair<StateId, Rational>> w;
        for (const auto& [tv, p] : inst.dist) w.emplace_back(b.intern(tv), p);
        b.pa.add_transition(id, inst.label,
                            Distribution::from_weights(std::move(w)));
        res.transition_summand.push_back(i);
      }
    }
  }
  b.stats.states = b.pa.num_states();
  b.stats.transitions = b.pa.num_transitions();
  std::uint64_t extra = 0;
  for (const auto& v : chased)
    if (!b.index.count(v)) ++extra;
  b.stats.visited_states = b.stats.states + extra;
  b.stats.visited_transitions = b.stats.transitions + chase_steps;
  b.stats.wall_time_ms = ms_since(b.t0);
  res.pa = std::move(b.pa);
  res.valuations = std::move(b.valuations);
  res.stats = b.stats;
  return res;
}

}  // namespace pacr
