#include "imono/term.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

namespace imono {

namespace {

std::shared_ptr<Term const> box(Term t) {
  return std::make_shared<Term const>(std::move(t));
}

}  // namespace

Term Term::var(int index) {
  Term t;
  t._kind = Kind::Var;
  t._var = index;
  return t;
}

Term Term::zero() {
  Term t;
  t._kind = Kind::Const0;
  return t;
}

Term Term::one() {
  Term t;
  t._kind = Kind::Const1;
  return t;
}

Term Term::mul(Term lhs, Term rhs) {
  Term t;
  t._kind = Kind::Mul;
  t._left = box(std::move(lhs));
  t._right = box(std::move(rhs));
  return t;
}

Term Term::join(Term lhs, Term rhs) {
  Term t;
  t._kind = Kind::Join;
  t._left = box(std::move(lhs));
  t._right = box(std::move(rhs));
  return t;
}

Term Term::inv(Term arg) {
  Term t;
  t._kind = Kind::Inv;
  t._left = box(std::move(arg));
  return t;
}

int Term::max_var() const {
  switch (_kind) {
    case Kind::Var:
      return _var;
    case Kind::Const0:
    case Kind::Const1:
      return -1;
    case Kind::Inv:
      return _left->max_var();
    case Kind::Mul:
    case Kind::Join:
      return std::max(_left->max_var(), _right->max_var());
  }
  return -1;
}

bool Term::operator==(Term const& other) const {
  if (_kind != other._kind) {
    return false;
  }
  switch (_kind) {
    case Kind::Var:
      return _var == other._var;
    case Kind::Const0:
    case Kind::Const1:
      return true;
    case Kind::Inv:
      return *_left == *other._left;
    case Kind::Mul:
    case Kind::Join:
      return *_left == *other._left && *_right == *other._right;
  }
  return false;
}

Identity Identity::make(Term lhs, Term rhs, std::vector<std::string> names) {
  Identity id;
  id.var_count = std::max(lhs.max_var(), rhs.max_var()) + 1;
  id.lhs = std::move(lhs);
  id.rhs = std::move(rhs);
  static char const* defaults = "xyzuvw";
  for (int i = 0; i < id.var_count; ++i) {
    if (i < static_cast<int>(names.size())) {
      id.var_names.push_back(names[i]);
    } else if (i < 6) {
      id.var_names.push_back(std::string(1, defaults[i]));
    } else {
      id.var_names.push_back("x" + std::to_string(i));
    }
  }
  return id;
}

QuasiIdentity QuasiIdentity::make(std::vector<Identity> premises,
                                  Identity conclusion) {
  QuasiIdentity q;
  q.var_count = conclusion.var_count;
  for (auto const& p : premises) {
    q.var_count = std::max(q.var_count, p.var_count);
  }
  q.var_names = conclusion.var_names;
  for (auto const& p : premises) {
    if (static_cast<int>(p.var_names.size()) > static_cast<int>(q.var_names.size())) {
      q.var_names = p.var_names;
    }
  }
  while (static_cast<int>(q.var_names.size()) < q.var_count) {
    q.var_names.push_back("x" + std::to_string(q.var_names.size()));
  }
  q.premises = std::move(premises);
  q.conclusion = std::move(conclusion);
  return q;
}

namespace {

// Recursive-descent parser. Tracks byte offsets for error reporting and
// renumbers variables densely in order of first occurrence.
class Parser {
 public:
  explicit Parser(std::string_view src) : _src(src) {}

  Term term() {
    return sum();
  }

  Identity identity() {
    Identity id = identity_part();
    skip_ws();
    expect_end();
    return id;
  }

  QuasiIdentity quasi() {
    std::vector<Identity> parts;
    parts.push_back(identity_part());
    bool has_arrow = false;
    while (true) {
      skip_ws();
      if (try_consume(",")) {
        parts.push_back(identity_part());
      } else if (try_consume("=>")) {
        parts.push_back(identity_part());
        has_arrow = true;
        break;
      } else {
        break;
      }
    }
    skip_ws();
    expect_end();
    Identity conclusion = parts.back();
    parts.pop_back();
    if (!has_arrow && !parts.empty()) {
      fail("expected '=>'");
    }
    return QuasiIdentity::make(std::move(parts), std::move(conclusion));
  }

  void expect_end() {
    if (_pos != _src.size()) {
      fail("unexpected trailing input");
    }
  }

  std::vector<std::string> const& var_names() const {
    return _names;
  }

 private:
  Identity identity_part() {
    Term lhs = sum();
    skip_ws();
    if (try_consume("\xe2\x89\x88")) {  // "≈"
      // ok
    } else if (_pos < _src.size() && _src[_pos] == '='
               && (_pos + 1 >= _src.size() || _src[_pos + 1] != '>')) {
      ++_pos;
    } else {
      fail("expected '='");
    }
    Term rhs = sum();
    return Identity::make(std::move(lhs), std::move(rhs), _names);
  }

  Term sum() {
    Term t = prod();
    while (true) {
      skip_ws();
      if (try_consume("+")) {
        t = Term::join(std::move(t), prod());
      } else {
        return t;
      }
    }
  }

  Term prod() {
    Term t = factor();
    while (true) {
      skip_ws();
      if (try_consume("*")) {
        t = Term::mul(std::move(t), factor());
      } else {
        return t;
      }
    }
  }

  Term factor() {
    skip_ws();
    if (try_consume("\xc2\xac")) {  // "¬"
      NestingGuard guard(this);
      return Term::inv(factor());
    }
    Term t = atom();
    while (true) {
      skip_ws();
      if (try_consume("'")) {
        t = Term::inv(std::move(t));
      } else {
        return t;
      }
    }
  }

  Term atom() {
    skip_ws();
    if (_pos >= _src.size()) {
      fail("unexpected end of input");
    }
    char c = _src[_pos];
    if (c == '0') {
      ++_pos;
      return Term::zero();
    }
    if (c == '1') {
      ++_pos;
      return Term::one();
    }
    if (c == '(') {
      ++_pos;
      NestingGuard guard(this);
      Term t = sum();
      skip_ws();
      if (!try_consume(")")) {
        fail("expected ')'");
      }
      return t;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = _pos;
      ++_pos;
      while (_pos < _src.size() && _src[_pos] >= '0' && _src[_pos] <= '9') {
        ++_pos;
      }
      std::string name(_src.substr(start, _pos - start));
      auto it = _vars.find(name);
      if (it == _vars.end()) {
        int index = static_cast<int>(_vars.size());
        it = _vars.emplace(name, index).first;
        _names.push_back(name);
      }
      return Term::var(it->second);
    }
    fail("unexpected character");
  }

  void skip_ws() {
    while (_pos < _src.size() && (_src[_pos] == ' ' || _src[_pos] == '\t')) {
      ++_pos;
    }
  }

  bool try_consume(std::string_view token) {
    if (_src.substr(_pos, token.size()) == token) {
      _pos += token.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::string const& what) {
    throw ParseError("syntax error: " + what, _pos);
  }

  // keeps pathological inputs from exhausting the call stack
  struct NestingGuard {
    explicit NestingGuard(Parser* p) : parser(p) {
      if (++parser->_depth > 200) {
        parser->fail("nesting too deep");
      }
    }

    ~NestingGuard() {
      --parser->_depth;
    }

    Parser* parser;
  };

  std::string_view _src;
  std::size_t _pos = 0;
  int _depth = 0;
  std::map<std::string, int> _vars;
  std::vector<std::string> _names;
};

}  // namespace

Term parse_term(std::string_view src) {
  Parser p(src);
  Term t = p.term();
  p.expect_end();
  return t;
}

Identity parse_identity(std::string_view src) {
  Parser p(src);
  return p.identity();
}

QuasiIdentity parse_quasi_identity(std::string_view src) {
  Parser p(src);
  return p.quasi();
}

namespace {

// Precedence levels: Join 0, Mul 1, atoms/unary 2. A child is parenthesized
// when its level is below the context, which round-trips left-associativity.
int level(Term const& t) {
  switch (t.kind()) {
    case Term::Kind::Join:
      return 0;
    case Term::Kind::Mul:
      return 1;
    default:
      return 2;
  }
}

void print_rec(Term const& t, std::vector<std::string> const& names, int ctx,
               std::string& out) {
  int lv = level(t);
  bool parens = lv < ctx;
  if (parens) {
    out += '(';
  }
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.var_index() < static_cast<int>(names.size())) {
        out += names[t.var_index()];
      } else {
        out += 'x';
        out += std::to_string(t.var_index());
      }
      break;
    case Term::Kind::Const0:
      out += '0';
      break;
    case Term::Kind::Const1:
      out += '1';
      break;
    case Term::Kind::Inv:
      print_rec(t.arg(), names, 2, out);
      out += '\'';
      break;
    case Term::Kind::Mul:
      print_rec(t.left(), names, 1, out);
      out += '*';
      print_rec(t.right(), names, 2, out);
      break;
    case Term::Kind::Join:
      print_rec(t.left(), names, 0, out);
      out += '+';
      print_rec(t.right(), names, 1, out);
      break;
  }
  if (parens) {
    out += ')';
  }
}

}  // namespace

std::string print_term(Term const& t, std::vector<std::string> const& names) {
  std::string out;
  print_rec(t, names, 0, out);
  return out;
}

std::string print_identity(Identity const& id) {
  return print_term(id.lhs, id.var_names) + " = "
         + print_term(id.rhs, id.var_names);
}

std::string print_quasi_identity(QuasiIdentity const& q) {
  std::string out;
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += print_term(q.premises[i].lhs, q.var_names) + " = "
           + print_term(q.premises[i].rhs, q.var_names);
  }
  if (!q.premises.empty()) {
    out += " => ";
  }
  out += print_term(q.conclusion.lhs, q.var_names) + " = "
         + print_term(q.conclusion.rhs, q.var_names);
  return out;
}

Term dualize(Term const& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Const0:
      return Term::one();
    case Term::Kind::Const1:
      return Term::zero();
    case Term::Kind::Inv:
      return Term::inv(dualize(t.arg()));
    case Term::Kind::Mul:
      return Term::join(dualize(t.left()), dualize(t.right()));
    case Term::Kind::Join:
      return Term::mul(dualize(t.left()), dualize(t.right()));
  }
  return t;
}

Identity dualize(Identity const& id) {
  return Identity::make(dualize(id.lhs), dualize(id.rhs), id.var_names);
}

Term mirror(Term const& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const0:
    case Term::Kind::Const1:
      return t;
    case Term::Kind::Inv:
      return Term::inv(mirror(t.arg()));
    case Term::Kind::Mul:
      return Term::mul(mirror(t.right()), mirror(t.left()));
    case Term::Kind::Join:
      return Term::join(mirror(t.right()), mirror(t.left()));
  }
  return t;
}

Identity mirror(Identity const& id) {
  return Identity::make(mirror(id.lhs), mirror(id.rhs), id.var_names);
}

namespace {

elem eval_rec(Term const& t, IMonoid const& alg,
              std::vector<elem> const& asg) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      int v = t.var_index();
      if (v < 0 || v >= static_cast<int>(asg.size())) {
        throw std::out_of_range("eval: assignment too short for variable "
                                + std::to_string(v));
      }
      if (asg[v] >= alg.n) {
        throw std::out_of_range("eval: assignment value out of range");
      }
      return asg[v];
    }
    case Term::Kind::Const0:
      return alg.zero();
    case Term::Kind::Const1:
      return alg.unit;
    case Term::Kind::Inv:
      return alg.inv_at(eval_rec(t.arg(), alg, asg));
    case Term::Kind::Mul:
      return alg.at(eval_rec(t.left(), alg, asg), eval_rec(t.right(), alg, asg));
    case Term::Kind::Join:
      return alg.join_at(eval_rec(t.left(), alg, asg),
                         eval_rec(t.right(), alg, asg));
  }
  throw InternalError("eval: bad term node");
}

// Flat postfix form; avoids tree-walking in the n^k hot loop.
struct Program {
  enum Op : std::uint8_t { PushVar, Push0, Push1, OpMul, OpJoin, OpInv };
  std::vector<std::pair<Op, std::uint8_t>> ops;

  static void compile(Term const& t, Program& out) {
    switch (t.kind()) {
      case Term::Kind::Var:
        out.ops.emplace_back(PushVar, static_cast<std::uint8_t>(t.var_index()));
        break;
      case Term::Kind::Const0:
        out.ops.emplace_back(Push0, 0);
        break;
      case Term::Kind::Const1:
        out.ops.emplace_back(Push1, 0);
        break;
      case Term::Kind::Inv:
        compile(t.arg(), out);
        out.ops.emplace_back(OpInv, 0);
        break;
      case Term::Kind::Mul:
        compile(t.left(), out);
        compile(t.right(), out);
        out.ops.emplace_back(OpMul, 0);
        break;
      case Term::Kind::Join:
        compile(t.left(), out);
        compile(t.right(), out);
        out.ops.emplace_back(OpJoin, 0);
        break;
    }
  }

  elem run(IMonoid const& alg, elem const* asg) const {
    elem stack[256];  // the parser caps nesting well below this
    int sp = 0;
    for (auto const& [op, arg] : ops) {
      switch (op) {
        case PushVar:
          stack[sp++] = asg[arg];
          break;
        case Push0:
          stack[sp++] = alg.zero();
          break;
        case Push1:
          stack[sp++] = alg.unit;
          break;
        case OpInv:
          stack[sp - 1] = alg.inv_at(stack[sp - 1]);
          break;
        case OpMul:
          --sp;
          stack[sp - 1] = alg.at(stack[sp - 1], stack[sp]);
          break;
        case OpJoin:
          --sp;
          stack[sp - 1] = alg.join_at(stack[sp - 1], stack[sp]);
          break;
      }
    }
    return stack[0];
  }
};

// Lexicographic odometer over assignments: the last variable varies fastest,
// so tuples are produced in lexicographic order on (x0, x1, ...).
bool advance(std::vector<elem>& asg, int n) {
  for (int i = static_cast<int>(asg.size()) - 1; i >= 0; --i) {
    if (asg[i] + 1 < n) {
      ++asg[i];
      return true;
    }
    asg[i] = 0;
  }
  return false;
}

void require_budget(int n, int var_count, double budget) {
  double evals = std::pow(static_cast<double>(n), var_count);
  if (evals > budget) {
    throw BudgetError("budget exceeded: " + std::to_string(n) + "^"
                      + std::to_string(var_count) + " evaluations > budget");
  }
}

}  // namespace

elem eval(Term const& t, IMonoid const& alg, std::vector<elem> const& asg) {
  return eval_rec(t, alg, asg);
}

CheckResult check_identity(IMonoid const& alg, Identity const& id,
                           double budget) {
  require_budget(alg.n, id.var_count, budget);
  Program lhs, rhs;
  Program::compile(id.lhs, lhs);
  Program::compile(id.rhs, rhs);
  std::vector<elem> asg(id.var_count, 0);
  do {
    elem lv = lhs.run(alg, asg.data());
    elem rv = rhs.run(alg, asg.data());
    if (lv != rv) {
      return {false, asg, lv, rv};
    }
  } while (advance(asg, alg.n));
  return {};
}

CheckResult check_quasi_identity(IMonoid const& alg, QuasiIdentity const& q,
                                 double budget) {
  require_budget(alg.n, q.var_count, budget);
  std::vector<std::pair<Program, Program>> premises(q.premises.size());
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    Program::compile(q.premises[i].lhs, premises[i].first);
    Program::compile(q.premises[i].rhs, premises[i].second);
  }
  Program cl, cr;
  Program::compile(q.conclusion.lhs, cl);
  Program::compile(q.conclusion.rhs, cr);
  std::vector<elem> asg(q.var_count, 0);
  do {
    bool applicable = true;
    for (auto const& [pl, pr] : premises) {
      if (pl.run(alg, asg.data()) != pr.run(alg, asg.data())) {
        applicable = false;
        break;
      }
    }
    if (applicable) {
      elem lv = cl.run(alg, asg.data());
      elem rv = cr.run(alg, asg.data());
      if (lv != rv) {
        return {false, asg, lv, rv};
      }
    }
  } while (advance(asg, alg.n));
  return {};
}

std::string format_witness(IMonoid const& alg,
                           std::vector<std::string> const& var_names,
                           std::vector<elem> const& witness) {
  std::string out;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i > 0) {
      out += ' ';
    }
    if (i < var_names.size()) {
      out += var_names[i];
    } else {
      out += 'x';
      out += std::to_string(i);
    }
    out += '=';
    out += alg.display(witness[i]);
  }
  return out;
}

}  // namespace imono
