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
#include "pacr/symdetect.hpp"

#include "pacr/pa.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pacr {
namespace {

ExprPtr binder_ref(const std::string& name, bool is_bool) {
  ExprPtr v = make_var(name);
  v->var_kind = Expr::VarKind::Binder;
  v->bval = is_bool;
  return v;
}

ExprPtr conj(std::vector<ExprPtr> parts) {
  if (parts.empty()) return make_bool(true);
  ExprPtr e = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k)
    e = make_node(Expr::Op::And, {e, parts[k]});
  return e;
}

std::size_t bundle_size(const Summand& sm) {
  std::size_t n = 1;
  for (const auto& d : sm.prob_vars) n *= d.sort.size();
  return n;
}

bool unit_weight_literal(const Summand& sm) {
  return (sm.weight->op == Expr::Op::IntLit && sm.weight->ival == 1) ||
         (sm.weight->op == Expr::Op::RatLit && sm.weight->rval == 1);
}

// Renamed copy of a summand's binder list, as declarations plus a
// substitution map.
struct Renamed {
  std::vector<VarDecl> decls;
  std::unordered_map<std::string, ExprPtr> subst;
};

Renamed rename_binders(const std::vector<VarDecl>& binders,
                       const std::string& suffix) {
  Renamed r;
  for (const auto& d : binders) {
    std::string fresh = d.name + suffix;
    r.decls.push_back({fresh, d.sort, nullptr});
    r.subst.emplace(d.name,
                    binder_ref(fresh, d.sort.kind == Sort::Kind::Bool));
  }
  return r;
}

// ------------------------------------------------------- constant folding

bool is_literal(const ExprPtr& e) {
  return e->op == Expr::Op::IntLit || e->op == Expr::Op::BoolLit ||
         e->op == Expr::Op::RatLit;
}

ExprPtr fold(const ExprPtr& e) {
  if (e->op == Expr::Op::Var || is_literal(e)) return e;
  auto out = std::make_shared<Expr>(*e);
  bool all_literal = true;
  for (auto& k : out->kids) {
    k = fold(k);
    all_literal = all_literal && is_literal(k);
  }
  if (e->op == Expr::Op::Ite && is_literal(out->kids[0]))
    return out->kids[0]->bval ? out->kids[1] : out->kids[2];
  if (!all_literal) return out;
  try {
    EvalValue v = eval_expr(out, {}, {});
    if (std::holds_alternative<bool>(v)) return make_bool(std::get<bool>(v));
    if (std::holds_alternative<long>(v)) return make_int(std::get<long>(v));
    auto lit = std::make_shared<Expr>();
    lit->op = Expr::Op::RatLit;
    lit->rval = std::get<Rational>(v);
    return lit;
  } catch (const Error&) {
    return out;
  }
}

// --------------------------------------------------- guard contradiction

struct VarFacts {
  bool must_true = false, must_false = false;
  bool impossible = false;  // two equalities with different constants
  std::optional<Rational> eq;
  std::vector<Rational> ne;
  std::optional<std::pair<Rational, bool>> lo, hi;  // bound, strict
};

void flatten_conj(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->op == Expr::Op::And) {
    flatten_conj(e->kids[0], out);
    flatten_conj(e->kids[1], out);
  } else {
    out.push_back(e);
  }
}

std::optional<std::string> var_key(const ExprPtr& e) {
  if (e->op != Expr::Op::Var) return std::nullopt;
  if (e->var_kind == Expr::VarKind::Global)
    return "g#" + std::to_string(e->global_index);
  if (e->var_kind == Expr::VarKind::Binder) return "b#" + e->name;
  return std::nullopt;
}

std::optional<Rational> num_literal(const ExprPtr& e) {
  if (e->op == Expr::Op::IntLit) return Rational(e->ival);
  if (e->op == Expr::Op::RatLit) return e->rval;
  return std::nullopt;
}

// Accumulates single-variable facts from one folded conjunct; returns false
// on an immediate contradiction (the conjunct folded to the literal false).
bool absorb(const ExprPtr& c, std::map<std::string, VarFacts>& facts) {
  if (c->op == Expr::Op::BoolLit) return c->bval;
  if (auto k = var_key(c)) {
    facts[*k].must_true = true;
    return true;
  }
  if (c->op == Expr::Op::Not) {
    if (auto k = var_key(c->kids[0])) facts[*k].must_false = true;
    return true;
  }
  auto record = [&](Expr::Op op, const std::string& key, const Rational& v) {
    VarFacts& f = facts[key];
    switch (op) {
      case Expr::Op::Eq:
        if (f.eq && *f.eq != v) f.impossible = true;
        f.eq = v;
        break;
      case Expr::Op::Ne:
        f.ne.push_back(v);
        break;
      case Expr::Op::Lt:
        if (!f.hi || v < f.hi->first) f.hi = {v, true};
        break;
      case Expr::Op::Le:
        if (!f.hi || v < f.hi->first) f.hi = {v, false};
        break;
      case Expr::Op::Gt:
        if (!f.lo || v > f.lo->first) f.lo = {v, true};
        break;
      case Expr::Op::Ge:
        if (!f.lo || v > f.lo->first) f.lo = {v, false};
        break;
      default:
        break;
    }
  };
  auto mirror = [](Expr::Op op) {
    switch (op) {
      case Expr::Op::Lt:
        return Expr::Op::Gt;
      case Expr::Op::Le:
        return Expr::Op::Ge;
      case Expr::Op::Gt:
        return Expr::Op::Lt;
      case Expr::Op::Ge:
        return Expr::Op::Le;
      default:
        return op;
    }
  };
  switch (c->op) {
    case Expr::Op::Eq:
    case Expr::Op::Ne: {
      // Boolean equality against a literal.
      for (int side = 0; side < 2; ++side) {
        const ExprPtr& a = c->kids[side];
        const ExprPtr& b = c->kids[1 - side];
        auto k = var_key(a);
        if (!k) continue;
        if (b->op == Expr::Op::BoolLit) {
          bool want = (c->op == Expr::Op::Eq) == b->bval;
          (want ? facts[*k].must_true : facts[*k].must_false) = true;
          return true;
        }
        if (auto v = num_literal(b)) {
          record(c->op, *k, *v);
          return true;
        }
      }
      return true;
    }
    case Expr::Op::Lt:
    case Expr::Op::Le:
    case Expr::Op::Gt:
    case Expr::Op::Ge: {
      if (auto k = var_key(c->kids[0]))
        if (auto v = num_literal(c->kids[1])) {
          record(c->op, *k, *v);
          return true;
        }
      if (auto k = var_key(c->kids[1]))
        if (auto v = num_literal(c->kids[0])) {
          record(mirror(c->op), *k, *v);
          return true;
        }
      return true;
    }
    default:
      return true;
  }
}

bool facts_contradict(const std::map<std::string, VarFacts>& facts) {
  for (const auto& [key, f] : facts) {
    if (f.impossible) return true;
    if (f.must_true && f.must_false) return true;
    if (f.eq) {
      for (const auto& v : f.ne)
        if (v == *f.eq) return true;
      if (f.lo &&
          (*f.eq < f.lo->first || (f.lo->second && *f.eq == f.lo->first)))
        return true;
      if (f.hi &&
          (*f.eq > f.hi->first || (f.hi->second && *f.eq == f.hi->first)))
        return true;
    }
    if (f.lo && f.hi) {
      if (f.lo->first > f.hi->first) return true;
      if (f.lo->first == f.hi->first && (f.lo->second || f.hi->second))
        return true;
    }
  }
  return false;
}

bool hypothesis_contradictory(const ExprPtr& hypothesis) {
  std::vector<ExprPtr> conjuncts;
  flatten_conj(hypothesis, conjuncts);
  std::map<std::string, VarFacts> facts;
  for (const auto& c : conjuncts)
    if (!absorb(fold(c), facts)) return true;
  return facts_contradict(facts);
}

}  // namespace

std::vector<std::size_t> candidate_summands(const LppeSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec.summands.size(); ++i) {
    const Summand& sm = spec.summands[i];
    if (sm.action != kTau) continue;
    if (bundle_size(sm) <= 1 || unit_weight_literal(sm)) out.push_back(i);
  }
  return out;
}

ConfluenceObligation obligation(const LppeSpec& spec, std::size_t i,
                                std::size_t j) {
  const Summand& si = spec.summands.at(i);
  const Summand& sj = spec.summands.at(j);
  if (si.action != kTau)
    throw Error("summand " + std::to_string(i + 1) + " is not a candidate");
  if (bundle_size(si) > 1)
    throw Error("candidate bundle of summand " + std::to_string(i + 1) +
                " is not deterministic");

  ConfluenceObligation ob;
  ob.i = i;
  ob.j = j;

  Renamed ri = rename_binders(si.locals, "'i");
  // i's probabilistic binders take their unique value.
  for (const auto& d : si.prob_vars) {
    long v = d.sort.kind == Sort::Kind::Bool ? 0 : d.sort.values.front();
    ri.subst.emplace(d.name, d.sort.kind == Sort::Kind::Bool
                                 ? make_bool(v != 0)
                                 : make_int(v));
  }
  std::vector<VarDecl> rj_all = sj.locals;
  rj_all.insert(rj_all.end(), sj.prob_vars.begin(), sj.prob_vars.end());
  Renamed rj = rename_binders(rj_all, "'j");
  ob.binders = ri.decls;
  ob.binders.insert(ob.binders.end(), rj.decls.begin(), rj.decls.end());

  ExprPtr ci = substitute(si.guard, {}, ri.subst);
  ExprPtr cj = substitute(sj.guard, {}, rj.subst);
  ob.hypothesis = make_node(Expr::Op::And, {ci, cj});

  // Next-state maps of both copies.
  std::unordered_map<std::size_t, ExprPtr> after_i, after_j;
  for (std::size_t g = 0; g < spec.globals.size(); ++g) {
    after_i.emplace(g, substitute(si.next[g], {}, ri.subst));
    after_j.emplace(g, substitute(sj.next[g], {}, rj.subst));
  }

  std::vector<ExprPtr> commute;
  // j's guard survives i, and i's guard survives j.
  commute.push_back(substitute(cj, after_i, {}));
  commute.push_back(substitute(ci, after_j, {}));
  // j's action arguments and weight are untouched by i.
  for (const auto& arg : sj.args) {
    ExprPtr a = substitute(arg, {}, rj.subst);
    if (a->op == Expr::Op::Var && a->var_kind == Expr::VarKind::Sym) continue;
    commute.push_back(make_node(Expr::Op::Eq, {a, substitute(a, after_i, {})}));
  }
  {
    ExprPtr w = substitute(sj.weight, {}, rj.subst);
    if (!is_literal(w))
      commute.push_back(
          make_node(Expr::Op::Eq, {w, substitute(w, after_i, {})}));
  }
  // The two execution orders agree on every global.
  for (std::size_t g = 0; g < spec.globals.size(); ++g)
    commute.push_back(
        make_node(Expr::Op::Eq, {substitute(after_j.at(g), after_i, {}),
                                 substitute(after_i.at(g), after_j, {})}));
  ExprPtr commutation = conj(std::move(commute));

  if (i == j) {
    // Same-instance disjunct: the two copies pick the same target.
    std::vector<ExprPtr> same;
    for (std::size_t g = 0; g < spec.globals.size(); ++g)
      same.push_back(
          make_node(Expr::Op::Eq, {after_i.at(g), after_j.at(g)}));
    ob.conclusion = make_node(Expr::Op::Or, {conj(std::move(same)), commutation});
  } else {
    ob.conclusion = commutation;
  }
  return ob;
}

DischargeResult discharge(const LppeSpec& spec, std::size_t i, std::size_t j) {
  ConfluenceObligation ob;
  try {
    ob = obligation(spec, i, j);
  } catch (const Error&) {
    return {false, std::nullopt};  // no deterministic target to reason about
  }
  if (hypothesis_contradictory(ob.hypothesis))
    return {true, DischargeMethod::GuardContradiction};

  auto touched = [&](std::size_t k) {
    std::set<std::size_t> s;
    for (std::size_t g : read_set(spec, k)) s.insert(g);
    for (std::size_t g : write_set(spec, k)) s.insert(g);
    return s;
  };
  std::set<std::size_t> ti = touched(i), tj = touched(j);
  bool disjoint = true;
  for (std::size_t g : ti)
    if (tj.count(g)) disjoint = false;
  auto writes_meet_reads = [&](std::size_t a, std::size_t b) {
    auto w = write_set(spec, a);
    auto r = read_set(spec, b);
    for (std::size_t g : w)
      if (std::find(r.begin(), r.end(), g) != r.end()) return true;
    return false;
  };
  if (disjoint && !writes_meet_reads(i, j) && !writes_meet_reads(j, i))
    return {true, DischargeMethod::VariableDisjointness};

  if (i == j && spec.summands[i].locals.empty() &&
      bundle_size(spec.summands[i]) <= 1)
    return {true, DischargeMethod::SelfCommutation};

  return {false, std::nullopt};
}

std::vector<std::size_t> detect_confluent_summands(const LppeSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t i : candidate_summands(spec)) {
    bool all = true;
    for (std::size_t j = 0; j < spec.summands.size() && all; ++j)
      all = discharge(spec, i, j).proven;
    if (all) out.push_back(i);
  }
  return out;
}

std::vector<PairReport> detection_report(const LppeSpec& spec) {
  std::vector<PairReport> out;
  for (std::size_t i : candidate_summands(spec))
    for (std::size_t j = 0; j < spec.summands.size(); ++j)
      out.push_back({i, j, discharge(spec, i, j)});
  return out;
}

namespace {

std::string smt_expr(const ExprPtr& e) {
  static const std::map<Expr::Op, std::string> ops = {
      {Expr::Op::Add, "+"}, {Expr::Op::Sub, "-"}, {Expr::Op::Mul, "*"},
      {Expr::Op::Div, "/"}, {Expr::Op::Eq, "="},  {Expr::Op::Lt, "<"},
      {Expr::Op::Le, "<="}, {Expr::Op::Gt, ">"},  {Expr::Op::Ge, ">="},
      {Expr::Op::And, "and"}, {Expr::Op::Or, "or"}};
  switch (e->op) {
    case Expr::Op::IntLit:
      return e->ival < 0 ? "(- " + std::to_string(-e->ival) + ")"
                         : std::to_string(e->ival);
    case Expr::Op::BoolLit:
      return e->bval ? "true" : "false";
    case Expr::Op::RatLit:
      return "(/ " + numerator(e->rval).str() + " " +
             denominator(e->rval).str() + ")";
    case Expr::Op::Var:
      return "|" + e->name + "|";
    case Expr::Op::Not:
      return "(not " + smt_expr(e->kids[0]) + ")";
    case Expr::Op::Neg:
      return "(- " + smt_expr(e->kids[0]) + ")";
    case Expr::Op::Ne:
      return "(distinct " + smt_expr(e->kids[0]) + " " +
             smt_expr(e->kids[1]) + ")";
    case Expr::Op::Ite:
      return "(ite " + smt_expr(e->kids[0]) + " " + smt_expr(e->kids[1]) +
             " " + smt_expr(e->kids[2]) + ")";
    default:
      return "(" + ops.at(e->op) + " " + smt_expr(e->kids[0]) + " " +
             smt_expr(e->kids[1]) + ")";
  }
}

std::string smt_domain(const std::string& name, const Sort& sort) {
  if (sort.kind == Sort::Kind::Bool) return "";
  std::string v = "|" + name + "|";
  std::string out = "(assert (or";
  for (long x : sort.values)
    out += " (= " + v + " " +
           (x < 0 ? "(- " + std::to_string(-x) + ")" : std::to_string(x)) +
           ")";
  return out + "))\n";
}

}  // namespace

std::string obligation_smt(const LppeSpec& spec,
                           const ConfluenceObligation& ob) {
  std::ostringstream out;
  out << "(set-logic QF_LIRA)\n";
  auto declare = [&](const std::string& name, const Sort& sort) {
    out << "(declare-const |" << name << "| "
        << (sort.kind == Sort::Kind::Bool ? "Bool" : "Int") << ")\n"
        << smt_domain(name, sort);
  };
  for (const auto& g : spec.globals) declare(g.name, g.sort);
  for (const auto& b : ob.binders) declare(b.name, b.sort);
  out << "(assert " << smt_expr(ob.hypothesis) << ")\n";
  out << "(assert (not " << smt_expr(ob.conclusion) << "))\n";
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace pacr
