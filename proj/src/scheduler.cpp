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
#include "pacr/scheduler.hpp"

#include <algorithm>

namespace pacr {
namespace {

void check_choice(const PA& pa, StateId at, const SchedulerChoice& choice) {
  Rational mass = choice.stop;
  if (choice.stop < 0) throw InvalidProbabilityError("negative halt mass");
  const auto& enabled = pa.enabled(at);
  for (const auto& [t, p] : choice.picks) {
    if (p < 0) throw InvalidProbabilityError("negative choice mass");
    if (std::find(enabled.begin(), enabled.end(), t) == enabled.end())
      throw Error("scheduler picks a transition not enabled at state " +
                  pa.state_name(at));
    mass += p;
  }
  if (mass != 1) throw InvalidProbabilityError("choice mass is not one");
}

}  // namespace

void FiniteScheduler::set_choice(const PA& pa, const Path& path,
                                 SchedulerChoice choice) {
  path.validate(pa);
  check_choice(pa, path.last(), choice);
  max_explicit_len_ = std::max(max_explicit_len_, path.steps.size());
  by_path_[{path.start, path.steps}] = std::move(choice);
}

void FiniteScheduler::set_memoryless(const PA& pa, StateId s,
                                     SchedulerChoice choice) {
  check_choice(pa, s, choice);
  by_state_[s] = std::move(choice);
}

const SchedulerChoice& FiniteScheduler::choice(const Path& path) const {
  static const SchedulerChoice kHalt;
  auto it = by_path_.find({path.start, path.steps});
  if (it != by_path_.end()) return it->second;
  auto st = by_state_.find(path.last());
  if (st != by_state_.end()) return st->second;
  return kHalt;
}

Rational path_probability(const PA& pa, const FiniteScheduler& sched,
                          const Path& path) {
  path.validate(pa);
  Rational p = 1;
  Path prefix{path.start, {}};
  for (const auto& [t, s] : path.steps) {
    const auto& c = sched.choice(prefix);
    Rational pick = 0;
    for (const auto& [ct, cp] : c.picks)
      if (ct == t) pick += cp;
    p *= pick * pa.transition(t).dist.probability(s);
    if (p == 0) return p;
    prefix.steps.emplace_back(t, s);
  }
  return p;
}

SubDistribution final_distribution(const PA& pa, const FiniteScheduler& sched,
                                   StateId start) {
  if (start >= pa.num_states()) throw Error("start state out of range");
  // Any scheduled path longer than this must have revisited a state in the
  // memoryless regime, so the path family is infinite.
  const std::size_t max_len = sched.max_explicit_length() + pa.num_states() + 1;
  std::vector<std::pair<StateId, Rational>> mass;

  struct Frame {
    Path path;
    Rational prob;
  };
  std::vector<Frame> stack;
  stack.push_back({Path{start, {}}, Rational(1)});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.path.steps.size() > max_len)
      throw NotFinitelyEnumerableError(
          "scheduler admits unboundedly long paths with positive probability");
    const auto& c = sched.choice(f.path);
    if (c.stop > 0) mass.emplace_back(f.path.last(), f.prob * c.stop);
    for (const auto& [t, p] : c.picks) {
      if (p == 0) continue;
      for (const auto& [s, q] : pa.transition(t).dist.support()) {
        Frame g{f.path, f.prob * p * q};
        g.path.steps.emplace_back(t, s);
        stack.push_back(std::move(g));
      }
    }
  }
  return SubDistribution::from_weights(std::move(mass));
}

}  // namespace pacr
