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
#include "doctest.h"
#include "pacr/weak_steps.hpp"
#include "support.hpp"

using namespace pacr;

namespace {

// fig1 with every interior state in one class and the outcome states
// separate, the setting for weak steps that may stutter internally first.
EquivRel fig1_interior_class(const PA& pa) {
  return EquivRel::from_blocks(
      pa.num_states(),
      {{pa.state_by_name("s"), pa.state_by_name("t2"), pa.state_by_name("t3"),
        pa.state_by_name("t4")},
       {pa.state_by_name("t1")},
       {pa.state_by_name("s1")},
       {pa.state_by_name("s2")},
       {pa.state_by_name("s3")},
       {pa.state_by_name("s4")},
       {pa.state_by_name("s5")}});
}

}  // namespace

TEST_CASE("weak step matching the worked scheduler distribution") {
  PA pa = PA::parse_file(pacr_test::fixture("fig1.pa"));
  EquivRel r = fig1_interior_class(pa);
  StateId s = pa.state_by_name("s");

  // The distribution produced by the worked fig1 scheduler; the weak-step
  // decision must find some scheduler with this exact outcome.
  Distribution mu = Distribution::from_weights(
      {{pa.state_by_name("s1"), Rational(8, 24)},
       {pa.state_by_name("s2"), Rational(7, 24)},
       {pa.state_by_name("s3"), Rational(1, 24)},
       {pa.state_by_name("s4"), Rational(4, 24)},
       {pa.state_by_name("s5"), Rational(4, 24)}});
  auto w = decide_weak_branching_step(pa, r, s, "a", mu);
  REQUIRE(w.has_value());
  CHECK(validate_witness(pa, r, *w));

  // Tampering with the witness must break re-validation.
  WeakStepWitness broken = *w;
  REQUIRE(!broken.exit_flow.empty());
  broken.exit_flow.front().second += Rational(1, 7);
  CHECK_FALSE(validate_witness(pa, r, broken));
}

TEST_CASE("weak step targets only reachable with full branching are rejected") {
  PA pa = PA::parse_file(pacr_test::fixture("fig1.pa"));
  EquivRel r = fig1_interior_class(pa);
  StateId s = pa.state_by_name("s");

  // All mass on s1 is possible: always continue to t2, exit with a there.
  auto to_s1 =
      decide_weak_branching_step(pa, r, s, "a",
                                 Distribution::dirac(pa.state_by_name("s1")));
  REQUIRE(to_s1.has_value());
  CHECK(validate_witness(pa, r, *to_s1));

  // All mass on s4 is not: the only a-step into s4 also gives s5 half.
  CHECK_FALSE(decide_weak_branching_step(
                  pa, r, s, "a", Distribution::dirac(pa.state_by_name("s4")))
                  .has_value());
  // No b-step can reach s1 at all.
  CHECK_FALSE(decide_weak_branching_step(
                  pa, r, s, "b", Distribution::dirac(pa.state_by_name("s1")))
                  .has_value());
}

TEST_CASE("intermediate states must stay inside the class") {
  PA pa = PA::parse_file(pacr_test::fixture("fig1.pa"));
  StateId s = pa.state_by_name("s");
  Distribution via_t3 = Distribution::from_weights(
      {{pa.state_by_name("s4"), Rational(1, 2)},
       {pa.state_by_name("s5"), Rational(1, 2)}});

  // With only {s, t3} joined, exiting through t3 works but t2 is barred.
  EquivRel narrow = EquivRel::from_blocks(
      pa.num_states(),
      {{s, pa.state_by_name("t3")}, {pa.state_by_name("t1")},
       {pa.state_by_name("t2")}, {pa.state_by_name("t4")},
       {pa.state_by_name("s1")}, {pa.state_by_name("s2")},
       {pa.state_by_name("s3")}, {pa.state_by_name("s4")},
       {pa.state_by_name("s5")}});
  auto w = decide_weak_branching_step(pa, narrow, s, "a", via_t3);
  REQUIRE(w.has_value());
  CHECK(validate_witness(pa, narrow, *w));
  CHECK_FALSE(decide_weak_branching_step(
                  pa, narrow, s, "a",
                  Distribution::dirac(pa.state_by_name("s1")))
                  .has_value());

  // Under the identity relation no internal stuttering is allowed at all:
  // s has no direct a-step.
  EquivRel id = EquivRel::identity(pa.num_states());
  CHECK_FALSE(decide_weak_branching_step(pa, id, s, "a", via_t3).has_value());
  // A direct transition is still a weak step.
  auto direct = decide_weak_branching_step(
      pa, id, pa.state_by_name("t4"), "a",
      Distribution::dirac(pa.state_by_name("s2")));
  REQUIRE(direct.has_value());
  CHECK(validate_witness(pa, id, *direct));
}

TEST_CASE("stutter case") {
  PA pa = PA::parse_file(pacr_test::fixture("fig1.pa"));
  EquivRel r = fig1_interior_class(pa);
  StateId s = pa.state_by_name("s");
  // An internal step to the Dirac on the start state itself always holds.
  auto w = decide_weak_branching_step(pa, r, s, kTau, Distribution::dirac(s));
  REQUIRE(w.has_value());
  CHECK(w->trivial());
  CHECK(validate_witness(pa, r, *w));
  // The class-level variant agrees.
  CHECK(weak_step_mod_r(pa, r, s, kTau,
                        Distribution::dirac(r.class_of(s))));
}

TEST_CASE("class-level weak step on the dice models") {
  PA pa = PA::parse_file(pacr_test::fixture("dice.pa"));
  // Suppose the internal flip were harmless: XX, HX, TX in one class.
  std::vector<std::vector<StateId>> blocks{{pa.state_by_name("XX"),
                                            pa.state_by_name("HX"),
                                            pa.state_by_name("TX")}};
  for (const char* n : {"XH", "XT", "HH", "HT", "TH", "TT"})
    blocks.push_back({pa.state_by_name(n)});
  EquivRel r = EquivRel::from_blocks(pa.num_states(), blocks);

  // XX itself weakly performs throw2 into the classes of XH and XT.
  Distribution lifted = Distribution::from_weights(
      {{r.class_of(pa.state_by_name("XH")), Rational(1, 2)},
       {r.class_of(pa.state_by_name("XT")), Rational(1, 2)}});
  CHECK(weak_step_mod_r(pa, r, pa.state_by_name("XX"), "throw2", lifted));
  // HX cannot: its throw2 lands in the classes of HH and HT instead, which
  // is exactly why the internal flip must not be prioritised.
  CHECK_FALSE(
      weak_step_mod_r(pa, r, pa.state_by_name("HX"), "throw2", lifted));
}

TEST_CASE("random automata: direct transitions are weak steps with valid witnesses") {
  pacr_test::Rng rng(7);
  for (int it = 0; it < 200; ++it) {
    PA pa = pacr_test::random_pa(rng);
    // A random 2-block relation plus the identity.
    std::vector<ClassId> cls(pa.num_states());
    for (auto& c : cls) c = static_cast<ClassId>(pacr_test::pick(rng, 2));
    for (EquivRel r : {EquivRel::from_class_of(cls),
                       EquivRel::identity(pa.num_states())}) {
      for (const auto& tr : pa.transitions()) {
        auto w = decide_weak_branching_step(pa, r, tr.source, tr.label,
                                            tr.dist);
        REQUIRE(w.has_value());
        CHECK(validate_witness(pa, r, *w));
      }
    }
  }
}
