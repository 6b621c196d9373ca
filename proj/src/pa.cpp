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
#include "pacr/pa.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace pacr {
namespace {

std::vector<std::pair<StateId, Rational>> merge_weights(
    std::vector<std::pair<StateId, Rational>> weights) {
  std::sort(weights.begin(), weights.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<StateId, Rational>> out;
  for (auto& [s, p] : weights) {
    if (p < 0)
      throw InvalidProbabilityError("negative probability in distribution");
    if (p == 0) continue;
    if (!out.empty() && out.back().first == s)
      out.back().second += p;
    else
      out.emplace_back(s, std::move(p));
  }
  return out;
}

Rational mass_of(const std::vector<std::pair<StateId, Rational>>& support) {
  Rational m = 0;
  for (const auto& [s, p] : support) m += p;
  return m;
}

}  // namespace

Distribution Distribution::dirac(StateId target) {
  Distribution d;
  d.support_.emplace_back(target, Rational(1));
  return d;
}

Distribution Distribution::from_weights(
    std::vector<std::pair<StateId, Rational>> weights) {
  Distribution d;
  d.support_ = merge_weights(std::move(weights));
  if (mass_of(d.support_) != 1)
    throw InvalidProbabilityError("distribution mass is not one");
  return d;
}

Rational Distribution::probability(StateId s) const {
  for (const auto& [t, p] : support_)
    if (t == s) return p;
  return Rational(0);
}

SubDistribution SubDistribution::from_weights(
    std::vector<std::pair<StateId, Rational>> weights) {
  SubDistribution d;
  d.support_ = merge_weights(std::move(weights));
  if (mass_of(d.support_) > 1)
    throw InvalidProbabilityError("sub-distribution mass exceeds one");
  return d;
}

Rational SubDistribution::probability(StateId s) const {
  for (const auto& [t, p] : support_)
    if (t == s) return p;
  return Rational(0);
}

Rational SubDistribution::total() const { return mass_of(support_); }

StateId PA::add_state(const std::string& name) {
  if (name_index_.count(name))
    throw Error("duplicate state name: " + name);
  StateId id = static_cast<StateId>(state_names_.size());
  state_names_.push_back(name);
  name_index_.emplace(name, id);
  outgoing_.emplace_back();
  return id;
}

void PA::set_initial(StateId s) {
  if (s >= num_states()) throw Error("initial state out of range");
  initial_ = s;
}

TransId PA::add_transition(StateId source, const std::string& label,
                           Distribution dist) {
  if (source >= num_states()) throw Error("transition source out of range");
  if (dist.support().empty()) throw Error("transition with empty distribution");
  for (const auto& [t, p] : dist.support())
    if (t >= num_states())
      throw CarrierMismatchError("transition target out of range");
  TransId id = static_cast<TransId>(transitions_.size());
  transitions_.push_back({source, label, std::move(dist)});
  outgoing_[source].push_back(id);
  return id;
}

StateId PA::state_by_name(const std::string& name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) throw Error("unknown state: " + name);
  return it->second;
}

PA PA::disjoint_union(const PA& a, const PA& b) {
  PA u;
  for (StateId s = 0; s < a.num_states(); ++s)
    u.add_state("l." + a.state_name(s));
  for (StateId s = 0; s < b.num_states(); ++s)
    u.add_state("r." + b.state_name(s));
  u.set_initial(a.initial());
  for (const auto& t : a.transitions()) u.add_transition(t.source, t.label, t.dist);
  StateId off = static_cast<StateId>(a.num_states());
  for (const auto& t : b.transitions()) {
    std::vector<std::pair<StateId, Rational>> w;
    for (const auto& [s, p] : t.dist.support()) w.emplace_back(s + off, p);
    u.add_transition(t.source + off, t.label,
                     Distribution::from_weights(std::move(w)));
  }
  return u;
}

// Fixture grammar, one declaration per line:
//   state <name>
//   init <name>
//   trans <source> <label> { <state>:<prob>, ... }
// '#' starts a comment; probabilities are "p" or "p/q".
PA PA::parse(std::istream& in) {
  PA pa;
  bool have_init = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "state") {
      std::string name;
      if (!(ls >> name)) throw ParseError("expected state name", lineno);
      if (pa.has_state(name))
        throw ParseError("duplicate state: " + name, lineno);
      pa.add_state(name);
    } else if (kw == "init") {
      std::string name;
      if (!(ls >> name)) throw ParseError("expected state name", lineno);
      if (!pa.has_state(name))
        throw ParseError("undeclared state: " + name, lineno);
      pa.set_initial(pa.state_by_name(name));
      have_init = true;
    } else if (kw == "trans") {
      std::string src, label;
      if (!(ls >> src >> label))
        throw ParseError("expected source and label", lineno);
      if (!pa.has_state(src))
        throw ParseError("undeclared state: " + src, lineno);
      std::string rest;
      std::getline(ls, rest);
      auto open = rest.find('{');
      auto close = rest.rfind('}');
      if (open == std::string::npos || close == std::string::npos ||
          close < open)
        throw ParseError("expected { ... } distribution", lineno);
      std::string body = rest.substr(open + 1, close - open - 1);
      std::vector<std::pair<StateId, Rational>> weights;
      std::istringstream bs(body);
      std::string entry;
      while (std::getline(bs, entry, ',')) {
        auto colon = entry.find(':');
        if (colon == std::string::npos)
          throw ParseError("expected state:prob entry", lineno);
        auto trim = [](std::string s) {
          auto b = s.find_first_not_of(" \t");
          auto e = s.find_last_not_of(" \t");
          return b == std::string::npos ? std::string()
                                        : s.substr(b, e - b + 1);
        };
        std::string target = trim(entry.substr(0, colon));
        std::string prob = trim(entry.substr(colon + 1));
        if (!pa.has_state(target))
          throw ParseError("undeclared state: " + target, lineno);
        try {
          weights.emplace_back(pa.state_by_name(target), parse_rational(prob));
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), lineno);
        }
      }
      try {
        pa.add_transition(pa.state_by_name(src), label,
                          Distribution::from_weights(std::move(weights)));
      } catch (const InvalidProbabilityError& e) {
        throw ParseError(e.what(), lineno);
      }
    } else {
      throw ParseError("unknown keyword: " + kw, lineno);
    }
  }
  if (pa.num_states() == 0) throw ParseError("no states declared", lineno);
  if (!have_init) throw ParseError("missing init declaration", lineno);
  return pa;
}

PA PA::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  return parse(in);
}

void PA::print(std::ostream& out) const {
  for (const auto& name : state_names_) out << "state " << name << "\n";
  out << "init " << state_name(initial_) << "\n";
  for (const auto& t : transitions_) {
    out << "trans " << state_name(t.source) << " " << t.label << " { ";
    bool first = true;
    for (const auto& [s, p] : t.dist.support()) {
      if (!first) out << ", ";
      first = false;
      out << state_name(s) << ":" << to_string(p);
    }
    out << " }\n";
  }
}

void PA::write_dot(std::ostream& out) const {
  out << "digraph pa {\n  rankdir=TB;\n";
  for (StateId s = 0; s < num_states(); ++s) {
    out << "  s" << s << " [label=\"" << state_name(s) << "\", shape=circle";
    if (s == initial_) out << ", penwidth=2";
    out << "];\n";
  }
  for (TransId i = 0; i < num_transitions(); ++i) {
    const auto& t = transitions_[i];
    if (t.dist.is_dirac()) {
      out << "  s" << t.source << " -> s" << t.dist.dirac_target()
          << " [label=\"" << t.label << "\"];\n";
      continue;
    }
    // Fan-out point for a probabilistic branch.
    out << "  t" << i << " [shape=point];\n";
    out << "  s" << t.source << " -> t" << i << " [label=\"" << t.label
        << "\"];\n";
    for (const auto& [s, p] : t.dist.support())
      out << "  t" << i << " -> s" << s << " [label=\"" << to_string(p)
          << "\", style=dashed];\n";
  }
  out << "}\n";
}

EquivRel EquivRel::identity(std::size_t n) {
  std::vector<ClassId> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<ClassId>(i);
  return from_class_of(std::move(c));
}

EquivRel EquivRel::single_class(std::size_t n) {
  return from_class_of(std::vector<ClassId>(n, 0));
}

EquivRel EquivRel::from_class_of(std::vector<ClassId> class_of) {
  EquivRel r;
  std::unordered_map<ClassId, ClassId> remap;
  r.class_of_.resize(class_of.size());
  for (std::size_t i = 0; i < class_of.size(); ++i) {
    auto [it, fresh] =
        remap.emplace(class_of[i], static_cast<ClassId>(remap.size()));
    r.class_of_[i] = it->second;
    if (fresh) r.members_.emplace_back();
    r.members_[it->second].push_back(static_cast<StateId>(i));
  }
  return r;
}

EquivRel EquivRel::from_blocks(std::size_t n,
                               const std::vector<std::vector<StateId>>& blocks) {
  std::vector<ClassId> class_of(n, static_cast<ClassId>(blocks.size()));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (StateId s : blocks[b]) {
      if (s >= n) throw CarrierMismatchError("block member out of carrier");
      if (class_of[s] != blocks.size())
        throw CarrierMismatchError("blocks overlap");
      class_of[s] = static_cast<ClassId>(b);
    }
  for (std::size_t s = 0; s < n; ++s)
    if (class_of[s] == blocks.size())
      throw CarrierMismatchError("blocks do not cover carrier");
  return from_class_of(std::move(class_of));
}

ClassId EquivRel::class_of(StateId s) const {
  if (s >= class_of_.size())
    throw CarrierMismatchError("state outside relation carrier");
  return class_of_[s];
}

bool EquivRel::refines(const EquivRel& other) const {
  if (size() != other.size())
    throw CarrierMismatchError("carrier size mismatch");
  for (const auto& block : members_) {
    ClassId c = other.class_of(block.front());
    for (StateId s : block)
      if (other.class_of(s) != c) return false;
  }
  return true;
}

void Path::validate(const PA& pa) const {
  if (start >= pa.num_states()) throw Error("path start out of range");
  StateId cur = start;
  for (const auto& [t, s] : steps) {
    if (t >= pa.num_transitions()) throw Error("path transition out of range");
    const auto& tr = pa.transition(t);
    if (tr.source != cur) throw Error("path step source mismatch");
    if (tr.dist.probability(s) == 0)
      throw Error("path successor not in transition support");
    cur = s;
  }
}

std::vector<std::string> trace(const PA& pa, const Path& path) {
  path.validate(pa);
  std::vector<std::string> out;
  for (const auto& [t, s] : path.steps) {
    const auto& label = pa.transition(t).label;
    if (label != kTau) out.push_back(label);
  }
  return out;
}

bool dist_eq_mod_r(const Distribution& mu, const Distribution& nu,
                   const EquivRel& r) {
  return lift_dist(mu, r) == lift_dist(nu, r);
}

Distribution lift_dist(const Distribution& mu, const EquivRel& r) {
  std::vector<std::pair<StateId, Rational>> w;
  for (const auto& [s, p] : mu.support())
    w.emplace_back(r.class_of(s), p);
  return Distribution::from_weights(std::move(w));
}

}  // namespace pacr
