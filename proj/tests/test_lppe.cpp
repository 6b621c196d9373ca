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
#include <algorithm>

#include "doctest.h"
#include "pacr/lppe.hpp"
#include "support.hpp"

using namespace pacr;

TEST_CASE("header and sorts") {
  LppeSpec spec = parse_lppe(
      "process P(x: {1..3} := 2, b: bool := true, v: {2,4,7} := 4)\n");
  CHECK(spec.name == "P");
  REQUIRE(spec.globals.size() == 3);
  CHECK(spec.globals[0].sort.values == std::vector<long>{1, 2, 3});
  CHECK(spec.globals[1].sort.kind == Sort::Kind::Bool);
  CHECK(spec.globals[2].sort.values == std::vector<long>{2, 4, 7});
  CHECK(initial_valuation(spec) == Valuation{2, 1, 4});
  CHECK(render_valuation(spec, {2, 1, 4}) == "2.t.4");

  CHECK_THROWS_AS(parse_lppe("process P(x: {1..3} := 9)\n"), ParseError);
  CHECK_THROWS_AS(parse_lppe("process P(x: {1..3} := true)\n"), ParseError);
  CHECK_THROWS_AS(parse_lppe("process P(tau: bool := true)\n"), ParseError);
  CHECK_THROWS_AS(parse_lppe("x = 1 => tau . P()\n"), ParseError);  // no header
}

TEST_CASE("summand forms and sugar") {
  LppeSpec spec = parse_lppe(
      "process P(x: {1..3} := 2, b: bool := false)\n"
      "sum n: {1..2} . x = 1 && !b => act(n, x) . P(x := n)\n"
      "x = 2 => tau . psum k: {1..3} of 1/3 . P(x := k, reset(b))\n");
  REQUIRE(spec.summands.size() == 2);
  CHECK(spec.summands[0].locals.size() == 1);
  CHECK(spec.summands[0].args.size() == 2);
  // Unassigned globals get the syntactic identity.
  CHECK(spec.summands[0].next[1]->op == Expr::Op::Var);
  // reset(b) became the initial value.
  CHECK(spec.summands[1].next[1]->op == Expr::Op::BoolLit);

  CHECK_THROWS_AS(parse_lppe("process P(x: {1..2} := 1)\n"
                             "x = 1 => tau(x) . P()\n"),
                  ParseError);  // tau takes no arguments
  CHECK_THROWS_AS(parse_lppe("process P(x: {1..2} := 1)\n"
                             "x = 1 => act . P(x := 1, x := 2)\n"),
                  ParseError);  // double assignment
  CHECK_THROWS_AS(parse_lppe("process P(x: {1..2} := 1)\n"
                             "sum x: {1..2} . x = 1 => act . P()\n"),
                  ParseError);  // local shadows global
  CHECK_THROWS_AS(parse_lppe("process P(x: {1..2} := 1)\n"
                             "x => act . P()\n"),
                  ParseError);  // guard not boolean
  CHECK_THROWS_AS(parse_lppe("process P(x: {1..2} := 1)\n"
                             "x = 1 => act . Q(x := 1)\n"),
                  ParseError);  // wrong recursion target
}

TEST_CASE("pretty-printing is a fixpoint and preserves semantics") {
  for (const char* name : {"leader.lppe", "leader2.lppe", "example4.lppe"}) {
    LppeSpec spec = parse_lppe_file(pacr_test::model(name));
    std::string once = pretty_print(spec);
    LppeSpec again = parse_lppe(once);
    CHECK(pretty_print(again) == once);
    // Same state space from both readings.
    GenResult a = explore(spec);
    GenResult b = explore(again);
    CHECK(a.stats.states == b.stats.states);
    CHECK(a.stats.transitions == b.stats.transitions);
  }
}

TEST_CASE("instances of the bundled two-summand example") {
  LppeSpec spec = parse_lppe_file(pacr_test::model("example4.lppe"));
  Valuation at_one = initial_valuation(spec);

  auto insts = summand_transitions(spec, at_one, 0);
  REQUIRE(insts.size() == 3);  // one per nondeterministic choice of n
  std::vector<std::string> labels;
  for (const auto& inst : insts) labels.push_back(inst.label);
  std::sort(labels.begin(), labels.end());
  CHECK(labels ==
        std::vector<std::string>{"output(1)", "output(2)", "output(3)"});
  // Each instance branches to pc = 1 with weight 1/3 and pc = 2 with 2/3.
  for (const auto& inst : insts) {
    REQUIRE(inst.dist.size() == 2);
    CHECK(inst.dist[0].first == Valuation{1});
    CHECK(inst.dist[0].second == Rational(1, 3));
    CHECK(inst.dist[1].first == Valuation{2});
    CHECK(inst.dist[1].second == Rational(2, 3));
  }
  // The second summand is disabled at pc = 1 and deterministic at pc = 2.
  CHECK(summand_transitions(spec, at_one, 1).empty());
  auto beep = summand_transitions(spec, {2}, 1);
  REQUIRE(beep.size() == 1);
  CHECK(beep[0].label == "beep");
  REQUIRE(beep[0].dist.size() == 1);
  CHECK(beep[0].dist[0].first == Valuation{1});
}

TEST_CASE("free symbolic atoms are allowed only as whole action arguments") {
  LppeSpec spec = parse_lppe(
      "process P(x: {1..2} := 1)\n"
      "x = 1 => act(one) . P(x := 2)\n");
  auto insts = summand_transitions(spec, {1}, 0);
  REQUIRE(insts.size() == 1);
  CHECK(insts[0].label == "act(one)");
  CHECK_THROWS_AS(parse_lppe("process P(x: {1..2} := 1)\n"
                             "x = 1 => act(one + 1) . P()\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_lppe("process P(x: {1..2} := 1)\n"
                             "x = one => act . P()\n"),
                  ParseError);
}

TEST_CASE("probability bundles are validated exactly") {
  LppeSpec bad_mass = parse_lppe(
      "process P(x: {1..2} := 1)\n"
      "x = 1 => tau . psum k: {1..2} of 1/3 . P(x := k)\n");
  CHECK_THROWS_AS(summand_transitions(bad_mass, {1}, 0),
                  IllFormedSummandError);

  // Equal targets are merged before the mass check.
  LppeSpec merged = parse_lppe(
      "process P(x: {1..2} := 1)\n"
      "x = 1 => tau . psum k: {1..4} of 1/4 . "
      "P(x := if k <= 2 then 1 else 2)\n");
  auto insts = summand_transitions(merged, {1}, 0);
  REQUIRE(insts.size() == 1);
  REQUIRE(insts[0].dist.size() == 2);
  CHECK(insts[0].dist[0].second == Rational(1, 2));

  LppeSpec out_of_sort = parse_lppe(
      "process P(x: {1..2} := 1)\n"
      "x = 1 => tau . P(x := x + 2)\n");
  CHECK_THROWS_AS(summand_transitions(out_of_sort, {1}, 0), Error);
}

TEST_CASE("enumeration cap") {
  LppeSpec spec = parse_lppe(
      "process P(x: {1..100} := 1)\n"
      "sum n: {1..100} . x <= 100 => act(n) . P()\n");
  EnumOptions small{10};
  CHECK_THROWS_AS(summand_transitions(spec, {1}, 0, small), ResourceCapError);
}

TEST_CASE("read and write sets of the leader write summand") {
  LppeSpec spec = parse_lppe_file(pacr_test::model("leader.lppe"));
  auto names = [&](const std::vector<std::size_t>& ids) {
    std::vector<std::string> out;
    for (std::size_t g : ids) out.push_back(spec.globals[g].name);
    std::sort(out.begin(), out.end());
    return out;
  };
  // Summand 3 (index 2): pc_2 = 2 && !set_3 guards, writes the mailbox.
  CHECK(names(read_set(spec, 2)) ==
        std::vector<std::string>{"d_2", "pc_2", "set_3"});
  CHECK(names(write_set(spec, 2)) ==
        std::vector<std::string>{"e_2", "pc_2", "set_3", "val_3"});
  // Identity assignments are neither read nor written.
  auto reads = names(read_set(spec, 2));
  CHECK(std::find(reads.begin(), reads.end(), "pc_4") == reads.end());
}

TEST_CASE("expression evaluation covers the operator set") {
  LppeSpec spec = parse_lppe(
      "process P(x: {1..6} := 1, b: bool := false)\n"
      "x + 1 >= 2 && (b || !b) && x != 7 - x * 0 => tau . "
      "psum k: {1..2} of (if k = 1 then 1 else 2) / 3 . P(x := k)\n");
  auto insts = summand_transitions(spec, {4, 0}, 0);
  REQUIRE(insts.size() == 1);
  CHECK(insts[0].dist[0].second == Rational(1, 3));
  CHECK(insts[0].dist[1].second == Rational(2, 3));
}
