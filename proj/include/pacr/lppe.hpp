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

#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pacr/errors.hpp"
#include "pacr/rational.hpp"

namespace pacr {

// A finite data sort: booleans or an explicit finite set of integers
// (written {lo..hi} or {v1,v2,...}).
struct Sort {
  enum class Kind { Bool, IntSet };
  Kind kind = Kind::Bool;
  std::vector<long> values;  // sorted, for IntSet

  std::size_t size() const {
    return kind == Kind::Bool ? 2 : values.size();
  }
  bool contains(long v) const;
  bool operator==(const Sort&) const = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

// Expression tree.  Variables are resolved during typechecking to either a
// global (by index), a binder (by name), or a free symbolic atom (allowed
// only as a whole action argument).
struct Expr {
  enum class Op {
    IntLit, BoolLit, RatLit, Var,
    Not, Neg,
    Add, Sub, Mul, Div,
    Eq, Ne, Lt, Le, Gt, Ge,
    And, Or,
    Ite,
  };
  enum class VarKind { Unresolved, Global, Binder, Sym };

  Op op;
  long ival = 0;
  bool bval = false;
  Rational rval;
  std::string name;
  VarKind var_kind = VarKind::Unresolved;
  std::size_t global_index = 0;
  std::vector<ExprPtr> kids;
};

ExprPtr make_int(long v);
ExprPtr make_bool(bool v);
ExprPtr make_var(const std::string& name);
ExprPtr make_node(Expr::Op op, std::vector<ExprPtr> kids);

struct VarDecl {
  std::string name;
  Sort sort;
  ExprPtr init;  // literal, globals only
};

// One summand: nondeterministic binders, guard, action with arguments,
// probabilistic binders with a weight expression, and one next-state
// expression per global (identity when unassigned).
struct Summand {
  std::vector<VarDecl> locals;
  ExprPtr guard;
  std::string action;
  std::vector<ExprPtr> args;
  std::vector<VarDecl> prob_vars;
  ExprPtr weight;
  std::vector<ExprPtr> next;
};

struct LppeSpec {
  std::string name;
  std::vector<VarDecl> globals;
  std::vector<Summand> summands;
  std::unordered_map<std::string, std::size_t> global_index;
};

LppeSpec parse_lppe(const std::string& text);
LppeSpec parse_lppe_file(const std::string& path);

// Canonical re-rendering; parse(pretty_print(s)) is structurally identical.
std::string pretty_print(const LppeSpec& spec);

// State valuations assign each global a value (booleans as 0/1).
using Valuation = std::vector<long>;
Valuation initial_valuation(const LppeSpec& spec);
std::string render_valuation(const LppeSpec& spec, const Valuation& v);

using EvalValue = std::variant<long, bool, Rational>;
using Binding = std::unordered_map<std::string, long>;

// Evaluates a typechecked expression; binder variables are looked up by name
// in `binding`, globals by index in `globals`.
EvalValue eval_expr(const ExprPtr& e, const Valuation& globals,
                    const Binding& binding);

struct SummandInstance {
  std::string label;
  std::vector<std::pair<Valuation, Rational>> dist;  // merged, mass one
};

struct EnumOptions {
  std::size_t enum_cap = 1'000'000;  // binder combinations per summand
};

// All transitions the given summand yields in the given state: local binder
// choices are enumerated, the probabilistic bundle is grouped by target
// valuation, and its mass is checked to be exactly one.
std::vector<SummandInstance> summand_transitions(const LppeSpec& spec,
                                                 const Valuation& state,
                                                 std::size_t summand,
                                                 const EnumOptions& opt = {});

// Globals read by a summand (free in guard, arguments, weight, or a
// non-identity next-state expression) and globals written by it (next-state
// expression not the syntactic identity).
std::vector<std::size_t> read_set(const LppeSpec& spec, std::size_t summand);
std::vector<std::size_t> write_set(const LppeSpec& spec, std::size_t summand);

// Deep copy with substitution: globals by index, binders by name.
ExprPtr substitute(const ExprPtr& e,
                   const std::unordered_map<std::size_t, ExprPtr>& globals,
                   const std::unordered_map<std::string, ExprPtr>& binders);

std::string render_expr(const ExprPtr& e);

}  // namespace pacr
