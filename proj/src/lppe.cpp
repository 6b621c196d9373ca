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
#include "pacr/lppe.hpp"

#include "pacr/pa.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pacr {

bool Sort::contains(long v) const {
  if (kind == Kind::Bool) return v == 0 || v == 1;
  return std::binary_search(values.begin(), values.end(), v);
}

ExprPtr make_int(long v) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::IntLit;
  e->ival = v;
  return e;
}

ExprPtr make_bool(bool v) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::BoolLit;
  e->bval = v;
  return e;
}

ExprPtr make_var(const std::string& name) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Var;
  e->name = name;
  return e;
}

ExprPtr make_node(Expr::Op op, std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->kids = std::move(kids);
  return e;
}

namespace {

// ---------------------------------------------------------------- tokens

struct Token {
  enum class Kind { Ident, Int, Rat, Punct, End };
  Kind kind = Kind::End;
  std::string text;
};

std::vector<Token> tokenize(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto peek = [&](std::size_t k) {
    return i + k < line.size() ? line[i + k] : '\0';
  };
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) ||
              line[j] == '_'))
        ++j;
      out.push_back({Token::Kind::Ident, line.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() &&
             std::isdigit(static_cast<unsigned char>(line[j])))
        ++j;
      // "p/q" with adjacent digits is a rational literal.
      if (j < line.size() && line[j] == '/' && j + 1 < line.size() &&
          std::isdigit(static_cast<unsigned char>(line[j + 1]))) {
        std::size_t k = j + 1;
        while (k < line.size() &&
               std::isdigit(static_cast<unsigned char>(line[k])))
          ++k;
        out.push_back({Token::Kind::Rat, line.substr(i, k - i)});
        i = k;
        continue;
      }
      out.push_back({Token::Kind::Int, line.substr(i, j - i)});
      i = j;
      continue;
    }
    auto two = [&](const char* p) {
      return c == p[0] && peek(1) == p[1];
    };
    for (const char* p : {":=", "..", "=>", "&&", "||", "!=", "<=", ">="}) {
      if (two(p)) {
        out.push_back({Token::Kind::Punct, p});
        i += 2;
        goto next;
      }
    }
    if (std::string("(){},:.=<>+-*/!").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c)});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", lineno);
  next:;
  }
  out.push_back({Token::Kind::End, ""});
  return out;
}

// ---------------------------------------------------------------- parser

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int lineno)
      : toks_(std::move(toks)), lineno_(lineno) {}

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_punct(const std::string& p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }
  bool at_ident(const std::string& w) const {
    return peek().kind == Token::Kind::Ident && peek().text == w;
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  void expect_punct(const std::string& p) {
    if (!at_punct(p)) fail("expected '" + p + "'");
    ++pos_;
  }
  void expect_ident(const std::string& w) {
    if (!at_ident(w)) fail("expected '" + w + "'");
    ++pos_;
  }
  std::string expect_name() {
    if (peek().kind != Token::Kind::Ident) fail("expected identifier");
    return next().text;
  }
  bool done() const { return peek().kind == Token::Kind::End; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " near '" + peek().text + "'", lineno_);
  }

  long parse_int_literal() {
    bool neg = false;
    if (at_punct("-")) {
      ++pos_;
      neg = true;
    }
    if (peek().kind != Token::Kind::Int) fail("expected integer");
    long v = std::stol(next().text);
    return neg ? -v : v;
  }

  Sort parse_sort() {
    if (at_ident("bool")) {
      ++pos_;
      return {Sort::Kind::Bool, {}};
    }
    expect_punct("{");
    Sort s{Sort::Kind::IntSet, {}};
    long first = parse_int_literal();
    if (at_punct("..")) {
      ++pos_;
      long last = parse_int_literal();
      if (last < first) fail("empty range");
      for (long v = first; v <= last; ++v) s.values.push_back(v);
    } else {
      s.values.push_back(first);
      while (at_punct(",")) {
        ++pos_;
        s.values.push_back(parse_int_literal());
      }
    }
    expect_punct("}");
    std::sort(s.values.begin(), s.values.end());
    s.values.erase(std::unique(s.values.begin(), s.values.end()),
                   s.values.end());
    return s;
  }

  std::vector<VarDecl> parse_binders() {
    std::vector<VarDecl> out;
    for (;;) {
      std::string name = expect_name();
      expect_punct(":");
      out.push_back({name, parse_sort(), nullptr});
      if (!at_punct(",")) break;
      ++pos_;
    }
    return out;
  }

  ExprPtr parse_expr() { return parse_or(); }

 private:
  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (at_punct("||") || at_ident("or")) {
      ++pos_;
      e = make_node(Expr::Op::Or, {e, parse_and()});
    }
    return e;
  }
  ExprPtr parse_and() {
    ExprPtr e = parse_not();
    while (at_punct("&&") || at_ident("and")) {
      ++pos_;
      e = make_node(Expr::Op::And, {e, parse_not()});
    }
    return e;
  }
  ExprPtr parse_not() {
    if (at_punct("!") || at_ident("not")) {
      ++pos_;
      return make_node(Expr::Op::Not, {parse_not()});
    }
    return parse_cmp();
  }
  ExprPtr parse_cmp() {
    ExprPtr e = parse_add();
    static const std::map<std::string, Expr::Op> ops = {
        {"=", Expr::Op::Eq}, {"!=", Expr::Op::Ne}, {"<", Expr::Op::Lt},
        {"<=", Expr::Op::Le}, {">", Expr::Op::Gt}, {">=", Expr::Op::Ge}};
    if (peek().kind == Token::Kind::Punct && ops.count(peek().text)) {
      Expr::Op op = ops.at(next().text);
      e = make_node(op, {e, parse_add()});
    }
    return e;
  }
  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    while (at_punct("+") || at_punct("-")) {
      Expr::Op op = next().text == "+" ? Expr::Op::Add : Expr::Op::Sub;
      e = make_node(op, {e, parse_mul()});
    }
    return e;
  }
  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    while (at_punct("*") || at_punct("/")) {
      Expr::Op op = next().text == "*" ? Expr::Op::Mul : Expr::Op::Div;
      e = make_node(op, {e, parse_unary()});
    }
    return e;
  }
  ExprPtr parse_unary() {
    if (at_punct("-")) {
      ++pos_;
      return make_node(Expr::Op::Neg, {parse_unary()});
    }
    return parse_primary();
  }
  ExprPtr parse_primary() {
    if (at_punct("(")) {
      ++pos_;
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (at_ident("if")) {
      ++pos_;
      ExprPtr c = parse_expr();
      expect_ident("then");
      ExprPtr a = parse_expr();
      expect_ident("else");
      ExprPtr b = parse_expr();
      return make_node(Expr::Op::Ite, {c, a, b});
    }
    if (at_ident("true")) {
      ++pos_;
      return make_bool(true);
    }
    if (at_ident("false")) {
      ++pos_;
      return make_bool(false);
    }
    if (peek().kind == Token::Kind::Int) return make_int(std::stol(next().text));
    if (peek().kind == Token::Kind::Rat) {
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::RatLit;
      e->rval = parse_rational(next().text);
      return e;
    }
    if (peek().kind == Token::Kind::Ident) return make_var(next().text);
    fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int lineno_;
};

// ------------------------------------------------------------- typecheck

enum class Type { Int, Bool, Rat, Sym };

struct Scope {
  const LppeSpec* spec;
  std::map<std::string, Sort::Kind> binders;
  bool allow_sym = false;  // lone unknown identifiers become atoms
};

[[noreturn]] void type_fail(const std::string& msg, int lineno) {
  throw ParseError(msg, lineno);
}

Type check_expr(const ExprPtr& e, const Scope& sc, int lineno, bool top) {
  switch (e->op) {
    case Expr::Op::IntLit:
      return Type::Int;
    case Expr::Op::BoolLit:
      return Type::Bool;
    case Expr::Op::RatLit:
      return Type::Rat;
    case Expr::Op::Var: {
      // For variables, bval records boolean-sortedness: valuations and
      // bindings store booleans as 0/1, and evaluation converts back.
      auto b = sc.binders.find(e->name);
      if (b != sc.binders.end()) {
        e->var_kind = Expr::VarKind::Binder;
        e->bval = b->second == Sort::Kind::Bool;
        return e->bval ? Type::Bool : Type::Int;
      }
      auto g = sc.spec->global_index.find(e->name);
      if (g != sc.spec->global_index.end()) {
        e->var_kind = Expr::VarKind::Global;
        e->global_index = g->second;
        e->bval = sc.spec->globals[g->second].sort.kind == Sort::Kind::Bool;
        return e->bval ? Type::Bool : Type::Int;
      }
      if (sc.allow_sym && top) {
        e->var_kind = Expr::VarKind::Sym;
        return Type::Sym;
      }
      type_fail("unknown variable: " + e->name, lineno);
    }
    case Expr::Op::Not: {
      if (check_expr(e->kids[0], sc, lineno, false) != Type::Bool)
        type_fail("'!' needs a boolean operand", lineno);
      return Type::Bool;
    }
    case Expr::Op::Neg: {
      Type t = check_expr(e->kids[0], sc, lineno, false);
      if (t != Type::Int && t != Type::Rat)
        type_fail("'-' needs a numeric operand", lineno);
      return t;
    }
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul: {
      Type a = check_expr(e->kids[0], sc, lineno, false);
      Type b = check_expr(e->kids[1], sc, lineno, false);
      if ((a != Type::Int && a != Type::Rat) ||
          (b != Type::Int && b != Type::Rat))
        type_fail("arithmetic needs numeric operands", lineno);
      return (a == Type::Rat || b == Type::Rat) ? Type::Rat : Type::Int;
    }
    case Expr::Op::Div: {
      Type a = check_expr(e->kids[0], sc, lineno, false);
      Type b = check_expr(e->kids[1], sc, lineno, false);
      if ((a != Type::Int && a != Type::Rat) ||
          (b != Type::Int && b != Type::Rat))
        type_fail("'/' needs numeric operands", lineno);
      return Type::Rat;
    }
    case Expr::Op::Eq:
    case Expr::Op::Ne: {
      Type a = check_expr(e->kids[0], sc, lineno, false);
      Type b = check_expr(e->kids[1], sc, lineno, false);
      bool both_num = (a == Type::Int || a == Type::Rat) &&
                      (b == Type::Int || b == Type::Rat);
      if (!both_num && !(a == Type::Bool && b == Type::Bool))
        type_fail("'='/'!=' needs matching operand types", lineno);
      return Type::Bool;
    }
    case Expr::Op::Lt:
    case Expr::Op::Le:
    case Expr::Op::Gt:
    case Expr::Op::Ge: {
      Type a = check_expr(e->kids[0], sc, lineno, false);
      Type b = check_expr(e->kids[1], sc, lineno, false);
      if ((a != Type::Int && a != Type::Rat) ||
          (b != Type::Int && b != Type::Rat))
        type_fail("comparison needs numeric operands", lineno);
      return Type::Bool;
    }
    case Expr::Op::And:
    case Expr::Op::Or: {
      if (check_expr(e->kids[0], sc, lineno, false) != Type::Bool ||
          check_expr(e->kids[1], sc, lineno, false) != Type::Bool)
        type_fail("boolean connective needs boolean operands", lineno);
      return Type::Bool;
    }
    case Expr::Op::Ite: {
      if (check_expr(e->kids[0], sc, lineno, false) != Type::Bool)
        type_fail("'if' condition must be boolean", lineno);
      Type a = check_expr(e->kids[1], sc, lineno, false);
      Type b = check_expr(e->kids[2], sc, lineno, false);
      if (a != b) type_fail("'if' branches must have one type", lineno);
      return a;
    }
  }
  type_fail("malformed expression", lineno);
}

}  // namespace

LppeSpec parse_lppe(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  LppeSpec spec;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Token> toks = tokenize(line, lineno);
    if (toks.size() == 1) continue;  // blank or comment
    LineParser p(std::move(toks), lineno);

    if (!have_header) {
      p.expect_ident("process");
      spec.name = p.expect_name();
      p.expect_punct("(");
      if (!p.at_punct(")")) {
        for (;;) {
          std::string name = p.expect_name();
          if (name == kTau) p.fail("'tau' is reserved");
          if (spec.global_index.count(name))
            p.fail("duplicate global: " + name);
          p.expect_punct(":");
          Sort sort = p.parse_sort();
          p.expect_punct(":=");
          ExprPtr init;
          if (p.at_ident("true") || p.at_ident("false"))
            init = make_bool(p.at_ident("true")), p.next();
          else
            init = make_int(p.parse_int_literal());
          if (sort.kind == Sort::Kind::Bool
                  ? init->op != Expr::Op::BoolLit
                  : (init->op != Expr::Op::IntLit ||
                     !sort.contains(init->ival)))
            p.fail("initial value outside sort for " + name);
          spec.global_index.emplace(name, spec.globals.size());
          spec.globals.push_back({name, std::move(sort), init});
          if (!p.at_punct(",")) break;
          p.next();
        }
      }
      p.expect_punct(")");
      if (!p.done()) p.fail("trailing tokens after header");
      have_header = true;
      continue;
    }

    // One summand per line.
    Summand sm;
    if (p.at_ident("sum")) {
      p.next();
      sm.locals = p.parse_binders();
      p.expect_punct(".");
    }
    sm.guard = p.parse_expr();
    p.expect_punct("=>");
    sm.action = p.expect_name();
    if (p.at_punct("(")) {
      p.next();
      if (!p.at_punct(")")) {
        for (;;) {
          sm.args.push_back(p.parse_expr());
          if (!p.at_punct(",")) break;
          p.next();
        }
      }
      p.expect_punct(")");
    }
    if (sm.action == kTau && !sm.args.empty())
      p.fail("'tau' takes no arguments");
    p.expect_punct(".");
    if (p.at_ident("psum")) {
      p.next();
      if (!p.at_ident("of")) sm.prob_vars = p.parse_binders();
      p.expect_ident("of");
      sm.weight = p.parse_expr();
      p.expect_punct(".");
    } else {
      sm.weight = make_int(1);
    }
    std::string callee = p.expect_name();
    if (callee != spec.name)
      p.fail("recursion must target process " + spec.name);
    p.expect_punct("(");
    sm.next.resize(spec.globals.size());
    std::set<std::size_t> assigned;
    if (!p.at_punct(")")) {
      for (;;) {
        if (p.at_ident("reset")) {
          p.next();
          p.expect_punct("(");
          std::string name = p.expect_name();
          p.expect_punct(")");
          auto it = spec.global_index.find(name);
          if (it == spec.global_index.end())
            p.fail("unknown global: " + name);
          if (!assigned.insert(it->second).second)
            p.fail("global assigned twice: " + name);
          // reset(x) is sugar for x := <initial value>.
          sm.next[it->second] = spec.globals[it->second].init;
        } else {
          std::string name = p.expect_name();
          auto it = spec.global_index.find(name);
          if (it == spec.global_index.end())
            p.fail("unknown global: " + name);
          p.expect_punct(":=");
          if (!assigned.insert(it->second).second)
            p.fail("global assigned twice: " + name);
          sm.next[it->second] = p.parse_expr();
        }
        if (!p.at_punct(",")) break;
        p.next();
      }
    }
    p.expect_punct(")");
    if (!p.done()) p.fail("trailing tokens after summand");
    for (std::size_t g = 0; g < spec.globals.size(); ++g)
      if (!sm.next[g]) sm.next[g] = make_var(spec.globals[g].name);

    // Duplicate binder names within a scope chain are rejected; a psum binder
    // may shadow a global (the bundled models rely on that).
    std::map<std::string, Sort::Kind> locals, with_prob;
    for (const auto& d : sm.locals) {
      if (spec.global_index.count(d.name))
        p.fail("local shadows global: " + d.name);
      if (!locals.emplace(d.name, d.sort.kind).second)
        p.fail("duplicate binder: " + d.name);
    }
    with_prob = locals;
    std::set<std::string> prob_names;
    for (const auto& d : sm.prob_vars) {
      if (locals.count(d.name)) p.fail("binder shadows local: " + d.name);
      if (!prob_names.insert(d.name).second)
        p.fail("duplicate binder: " + d.name);
      with_prob[d.name] = d.sort.kind;
    }

    Scope guard_scope{&spec, locals, false};
    if (check_expr(sm.guard, guard_scope, lineno, false) != Type::Bool)
      p.fail("guard must be boolean");
    Scope arg_scope{&spec, locals, true};
    for (auto& a : sm.args) {
      Type t = check_expr(a, arg_scope, lineno, true);
      if (t == Type::Rat) p.fail("action arguments must be int or bool");
    }
    Scope full_scope{&spec, with_prob, false};
    Type wt = check_expr(sm.weight, full_scope, lineno, false);
    if (wt != Type::Int && wt != Type::Rat)
      p.fail("weight must be numeric");
    for (std::size_t g = 0; g < spec.globals.size(); ++g) {
      Type t = check_expr(sm.next[g], full_scope, lineno, false);
      Type want = spec.globals[g].sort.kind == Sort::Kind::Bool ? Type::Bool
                                                                : Type::Int;
      if (t != want)
        p.fail("next-state type mismatch for " + spec.globals[g].name);
    }
    spec.summands.push_back(std::move(sm));
  }
  if (!have_header) throw ParseError("missing process header", lineno);
  return spec;
}

LppeSpec parse_lppe_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lppe(ss.str());
}

// ------------------------------------------------------------ evaluation

EvalValue eval_expr(const ExprPtr& e, const Valuation& globals,
                    const Binding& binding) {
  auto as_rat = [](const EvalValue& v) -> Rational {
    if (std::holds_alternative<long>(v)) return Rational(std::get<long>(v));
    if (std::holds_alternative<Rational>(v)) return std::get<Rational>(v);
    throw Error("expected a numeric value");
  };
  auto as_long = [](const EvalValue& v) -> long {
    if (!std::holds_alternative<long>(v)) throw Error("expected an integer");
    return std::get<long>(v);
  };
  auto as_bool = [](const EvalValue& v) -> bool {
    if (!std::holds_alternative<bool>(v)) throw Error("expected a boolean");
    return std::get<bool>(v);
  };
  switch (e->op) {
    case Expr::Op::IntLit:
      return e->ival;
    case Expr::Op::BoolLit:
      return e->bval;
    case Expr::Op::RatLit:
      return e->rval;
    case Expr::Op::Var: {
      long raw;
      switch (e->var_kind) {
        case Expr::VarKind::Global:
          raw = globals.at(e->global_index);
          break;
        case Expr::VarKind::Binder: {
          auto it = binding.find(e->name);
          if (it == binding.end()) throw Error("unbound binder: " + e->name);
          raw = it->second;
          break;
        }
        default:
          throw Error("cannot evaluate symbolic atom: " + e->name);
      }
      if (e->bval) return raw != 0;  // boolean-sorted variable
      return raw;
    }
    case Expr::Op::Not:
      return !as_bool(eval_expr(e->kids[0], globals, binding));
    case Expr::Op::Neg: {
      EvalValue v = eval_expr(e->kids[0], globals, binding);
      if (std::holds_alternative<long>(v)) return -std::get<long>(v);
      return Rational(-as_rat(v));
    }
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul: {
      EvalValue a = eval_expr(e->kids[0], globals, binding);
      EvalValue b = eval_expr(e->kids[1], globals, binding);
      if (std::holds_alternative<long>(a) &&
          std::holds_alternative<long>(b)) {
        long x = std::get<long>(a), y = std::get<long>(b);
        return e->op == Expr::Op::Add   ? x + y
               : e->op == Expr::Op::Sub ? x - y
                                        : x * y;
      }
      Rational x = as_rat(a), y = as_rat(b);
      return e->op == Expr::Op::Add   ? Rational(x + y)
             : e->op == Expr::Op::Sub ? Rational(x - y)
                                      : Rational(x * y);
    }
    case Expr::Op::Div: {
      Rational x = as_rat(eval_expr(e->kids[0], globals, binding));
      Rational y = as_rat(eval_expr(e->kids[1], globals, binding));
      if (y == 0) throw Error("division by zero");
      return Rational(x / y);
    }
    case Expr::Op::Eq:
    case Expr::Op::Ne: {
      EvalValue a = eval_expr(e->kids[0], globals, binding);
      EvalValue b = eval_expr(e->kids[1], globals, binding);
      bool eq;
      if (std::holds_alternative<bool>(a))
        eq = std::get<bool>(a) == as_bool(b);
      else
        eq = as_rat(a) == as_rat(b);
      return e->op == Expr::Op::Eq ? eq : !eq;
    }
    case Expr::Op::Lt:
    case Expr::Op::Le:
    case Expr::Op::Gt:
    case Expr::Op::Ge: {
      Rational x = as_rat(eval_expr(e->kids[0], globals, binding));
      Rational y = as_rat(eval_expr(e->kids[1], globals, binding));
      switch (e->op) {
        case Expr::Op::Lt:
          return x < y;
        case Expr::Op::Le:
          return x <= y;
        case Expr::Op::Gt:
          return x > y;
        default:
          return x >= y;
      }
    }
    case Expr::Op::And:
      return as_bool(eval_expr(e->kids[0], globals, binding)) &&
             as_bool(eval_expr(e->kids[1], globals, binding));
    case Expr::Op::Or:
      return as_bool(eval_expr(e->kids[0], globals, binding)) ||
             as_bool(eval_expr(e->kids[1], globals, binding));
    case Expr::Op::Ite:
      return as_bool(eval_expr(e->kids[0], globals, binding))
                 ? eval_expr(e->kids[1], globals, binding)
                 : eval_expr(e->kids[2], globals, binding);
  }
  throw Error("malformed expression");
}

Valuation initial_valuation(const LppeSpec& spec) {
  Valuation v;
  for (const auto& g : spec.globals)
    v.push_back(g.init->op == Expr::Op::BoolLit ? (g.init->bval ? 1 : 0)
                                                : g.init->ival);
  return v;
}

std::string render_valuation(const LppeSpec& spec, const Valuation& v) {
  std::string out;
  for (std::size_t g = 0; g < spec.globals.size(); ++g) {
    if (g) out += ".";
    if (spec.globals[g].sort.kind == Sort::Kind::Bool)
      out += v[g] ? "t" : "f";
    else
      out += std::to_string(v[g]);
  }
  return out;
}

namespace {

long sort_value(const Sort& s, std::size_t idx) {
  return s.kind == Sort::Kind::Bool ? static_cast<long>(idx) : s.values[idx];
}

// Odometer over a binder list; invokes f with the binding for every
// combination.
template <typename F>
void enumerate(const std::vector<VarDecl>& binders, Binding& binding, F&& f,
               std::size_t k = 0) {
  if (k == binders.size()) {
    f();
    return;
  }
  for (std::size_t i = 0; i < binders[k].sort.size(); ++i) {
    binding[binders[k].name] = sort_value(binders[k].sort, i);
    enumerate(binders, binding, f, k + 1);
  }
  binding.erase(binders[k].name);
}

std::string render_value(const EvalValue& v) {
  if (std::holds_alternative<bool>(v))
    return std::get<bool>(v) ? "true" : "false";
  if (std::holds_alternative<long>(v))
    return std::to_string(std::get<long>(v));
  return to_string(std::get<Rational>(v));
}

}  // namespace

std::vector<SummandInstance> summand_transitions(const LppeSpec& spec,
                                                 const Valuation& state,
                                                 std::size_t summand,
                                                 const EnumOptions& opt) {
  if (summand >= spec.summands.size()) throw Error("summand index out of range");
  const Summand& sm = spec.summands[summand];
  auto where = [&](const Binding& b) {
    std::string w = "summand " + std::to_string(summand + 1) + " in state " +
                    render_valuation(spec, state);
    for (const auto& d : sm.locals)
      if (auto it = b.find(d.name); it != b.end())
        w += ", " + d.name + "=" + std::to_string(it->second);
    return w;
  };

  std::size_t combos = 1;
  for (const auto& d : sm.locals) combos *= d.sort.size();
  std::size_t prob_combos = 1;
  for (const auto& d : sm.prob_vars) prob_combos *= d.sort.size();
  if (combos > opt.enum_cap || prob_combos > opt.enum_cap ||
      (combos && prob_combos > opt.enum_cap / combos))
    throw ResourceCapError("binder enumeration cap exceeded in " +
                           where(Binding{}));

  std::vector<SummandInstance> out;
  Binding binding;
  enumerate(sm.locals, binding, [&] {
    EvalValue g = eval_expr(sm.guard, state, binding);
    if (!std::get<bool>(g)) return;

    std::string label = sm.action;
    if (!sm.args.empty()) {
      label += "(";
      for (std::size_t i = 0; i < sm.args.size(); ++i) {
        if (i) label += ",";
        const auto& a = sm.args[i];
        label += a->op == Expr::Op::Var && a->var_kind == Expr::VarKind::Sym
                     ? a->name
                     : render_value(eval_expr(a, state, binding));
      }
      label += ")";
    }

    std::map<Valuation, Rational> grouped;
    Rational mass = 0;
    Binding inner = binding;
    enumerate(sm.prob_vars, inner, [&] {
      EvalValue wv = eval_expr(sm.weight, state, inner);
      Rational w = std::holds_alternative<long>(wv)
                       ? Rational(std::get<long>(wv))
                       : std::get<Rational>(wv);
      if (w < 0)
        throw IllFormedSummandError("negative weight in " + where(binding));
      if (w == 0) return;
      Valuation nxt(spec.globals.size());
      for (std::size_t gx = 0; gx < spec.globals.size(); ++gx) {
        EvalValue nv = eval_expr(sm.next[gx], state, inner);
        long raw = std::holds_alternative<bool>(nv)
                       ? (std::get<bool>(nv) ? 1 : 0)
                       : std::get<long>(nv);
        if (!spec.globals[gx].sort.contains(raw))
          throw IllFormedSummandError("next value " + std::to_string(raw) +
                                      " for " + spec.globals[gx].name +
                                      " outside its sort in " +
                                      where(binding));
        nxt[gx] = raw;
      }
      grouped[std::move(nxt)] += w;
      mass += w;
    });
    if (grouped.empty()) return;  // all weights zero: no transition
    if (mass != 1)
      throw IllFormedSummandError("probability mass " + to_string(mass) +
                                  " is not one in " + where(binding));
    SummandInstance inst;
    inst.label = std::move(label);
    for (auto& [val, p] : grouped) inst.dist.emplace_back(val, p);
    out.push_back(std::move(inst));
  });
  return out;
}

namespace {

bool is_identity(const Summand& sm, std::size_t g) {
  const auto& e = sm.next[g];
  return e->op == Expr::Op::Var && e->var_kind == Expr::VarKind::Global &&
         e->global_index == g;
}

void free_globals(const ExprPtr& e, std::set<std::size_t>& out) {
  if (e->op == Expr::Op::Var) {
    if (e->var_kind == Expr::VarKind::Global) out.insert(e->global_index);
    return;
  }
  for (const auto& k : e->kids) free_globals(k, out);
}

}  // namespace

std::vector<std::size_t> read_set(const LppeSpec& spec, std::size_t summand) {
  const Summand& sm = spec.summands.at(summand);
  std::set<std::size_t> out;
  free_globals(sm.guard, out);
  for (const auto& a : sm.args) free_globals(a, out);
  free_globals(sm.weight, out);
  for (std::size_t g = 0; g < spec.globals.size(); ++g)
    if (!is_identity(sm, g)) free_globals(sm.next[g], out);
  return {out.begin(), out.end()};
}

std::vector<std::size_t> write_set(const LppeSpec& spec, std::size_t summand) {
  const Summand& sm = spec.summands.at(summand);
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < spec.globals.size(); ++g)
    if (!is_identity(sm, g)) out.push_back(g);
  return out;
}

ExprPtr substitute(const ExprPtr& e,
                   const std::unordered_map<std::size_t, ExprPtr>& globals,
                   const std::unordered_map<std::string, ExprPtr>& binders) {
  if (e->op == Expr::Op::Var) {
    if (e->var_kind == Expr::VarKind::Global) {
      auto it = globals.find(e->global_index);
      if (it != globals.end()) return it->second;
    } else if (e->var_kind == Expr::VarKind::Binder) {
      auto it = binders.find(e->name);
      if (it != binders.end()) return it->second;
    }
    return std::make_shared<Expr>(*e);
  }
  auto out = std::make_shared<Expr>(*e);
  for (auto& k : out->kids) k = substitute(k, globals, binders);
  return out;
}

// ---------------------------------------------------------------- render

namespace {

std::string render_sort(const Sort& s) {
  if (s.kind == Sort::Kind::Bool) return "bool";
  bool contiguous = true;
  for (std::size_t i = 1; i < s.values.size(); ++i)
    if (s.values[i] != s.values[i - 1] + 1) contiguous = false;
  std::string out = "{";
  if (contiguous && s.values.size() > 1) {
    out += std::to_string(s.values.front()) + ".." +
           std::to_string(s.values.back());
  } else {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(s.values[i]);
    }
  }
  return out + "}";
}

std::string render_binders(const std::vector<VarDecl>& ds) {
  std::string out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) out += ", ";
    out += ds[i].name + ": " + render_sort(ds[i].sort);
  }
  return out;
}

}  // namespace

std::string render_expr(const ExprPtr& e) {
  static const std::map<Expr::Op, std::string> binop = {
      {Expr::Op::Add, "+"}, {Expr::Op::Sub, "-"}, {Expr::Op::Mul, "*"},
      {Expr::Op::Div, "/"}, {Expr::Op::Eq, "="},  {Expr::Op::Ne, "!="},
      {Expr::Op::Lt, "<"},  {Expr::Op::Le, "<="}, {Expr::Op::Gt, ">"},
      {Expr::Op::Ge, ">="}, {Expr::Op::And, "&&"}, {Expr::Op::Or, "||"}};
  switch (e->op) {
    case Expr::Op::IntLit:
      return e->ival < 0 ? "(" + std::to_string(e->ival) + ")"
                         : std::to_string(e->ival);
    case Expr::Op::BoolLit:
      return e->bval ? "true" : "false";
    case Expr::Op::RatLit:
      return to_string(e->rval);
    case Expr::Op::Var:
      return e->name;
    case Expr::Op::Not:
      return "!(" + render_expr(e->kids[0]) + ")";
    case Expr::Op::Neg:
      return "-(" + render_expr(e->kids[0]) + ")";
    case Expr::Op::Ite:
      return "(if " + render_expr(e->kids[0]) + " then " +
             render_expr(e->kids[1]) + " else " + render_expr(e->kids[2]) +
             ")";
    default:
      return "(" + render_expr(e->kids[0]) + " " + binop.at(e->op) + " " +
             render_expr(e->kids[1]) + ")";
  }
}

std::string pretty_print(const LppeSpec& spec) {
  std::ostringstream out;
  out << "process " << spec.name << "(";
  for (std::size_t g = 0; g < spec.globals.size(); ++g) {
    if (g) out << ", ";
    out << spec.globals[g].name << ": " << render_sort(spec.globals[g].sort)
        << " := " << render_expr(spec.globals[g].init);
  }
  out << ")\n";
  for (const auto& sm : spec.summands) {
    if (!sm.locals.empty()) out << "sum " << render_binders(sm.locals) << " . ";
    out << render_expr(sm.guard) << " => " << sm.action;
    if (!sm.args.empty()) {
      out << "(";
      for (std::size_t i = 0; i < sm.args.size(); ++i) {
        if (i) out << ",";
        out << render_expr(sm.args[i]);
      }
      out << ")";
    }
    out << " . ";
    bool unit_weight = sm.prob_vars.empty() &&
                       ((sm.weight->op == Expr::Op::IntLit &&
                         sm.weight->ival == 1) ||
                        (sm.weight->op == Expr::Op::RatLit &&
                         sm.weight->rval == 1));
    if (!unit_weight) {
      out << "psum ";
      if (!sm.prob_vars.empty()) out << render_binders(sm.prob_vars) << " ";
      out << "of " << render_expr(sm.weight) << " . ";
    }
    out << spec.name << "(";
    bool first = true;
    for (std::size_t g = 0; g < spec.globals.size(); ++g) {
      const auto& e = sm.next[g];
      if (e->op == Expr::Op::Var && e->var_kind == Expr::VarKind::Global &&
          e->global_index == g)
        continue;
      if (!first) out << ", ";
      first = false;
      out << spec.globals[g].name << " := " << render_expr(e);
    }
    out << ")\n";
  }
  return out.str();
}

}  // namespace pacr
