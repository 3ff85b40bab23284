#include "doctest.h"
#include "imono/catalog.hpp"
#include "imono/term.hpp"
#include "support.hpp"

using namespace imono;

TEST_CASE("parsing basic shapes") {
  Term t = parse_term("x*(y+z)");
  REQUIRE(t.kind() == Term::Kind::Mul);
  CHECK(t.left().kind() == Term::Kind::Var);
  CHECK(t.left().var_index() == 0);
  CHECK(t.right().kind() == Term::Kind::Join);
  CHECK(t.right().left().var_index() == 1);
  CHECK(t.right().right().var_index() == 2);

  Term u = parse_term("(x+1)'*y");
  REQUIRE(u.kind() == Term::Kind::Mul);
  REQUIRE(u.left().kind() == Term::Kind::Inv);
  CHECK(u.left().arg().kind() == Term::Kind::Join);
  CHECK(u.left().arg().right().kind() == Term::Kind::Const1);
  CHECK(u.right().var_index() == 1);

  Term v = parse_term("x''");
  REQUIRE(v.kind() == Term::Kind::Inv);
  REQUIRE(v.arg().kind() == Term::Kind::Inv);
  CHECK(v.arg().arg().kind() == Term::Kind::Var);
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_term("x+y*z") == Term::join(Term::var(0), Term::mul(Term::var(1), Term::var(2))));
  CHECK(parse_term("x*y*z")
        == Term::mul(Term::mul(Term::var(0), Term::var(1)), Term::var(2)));
  CHECK(parse_term("x+y+z")
        == Term::join(Term::join(Term::var(0), Term::var(1)), Term::var(2)));
}

TEST_CASE("variables renumber densely by first occurrence") {
  Identity id = parse_identity("z*y = y*z");
  CHECK(id.var_count == 2);
  CHECK(id.var_names[0] == "z");
  CHECK(id.var_names[1] == "y");
  Identity id2 = parse_identity("x10*b = b");
  CHECK(id2.var_count == 2);
  CHECK(id2.var_names[0] == "x10");
}

TEST_CASE("unicode aliases") {
  Identity id = parse_identity("x*y \xe2\x89\x88 y*x");
  CHECK(id.lhs == parse_term("x*y"));
  CHECK(parse_term("\xc2\xac(x*y)") == parse_term("(x*y)'"));
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(parse_term("x+"), ParseError);
  CHECK_THROWS_AS(parse_term("x)"), ParseError);
  CHECK_THROWS_AS(parse_identity("x*y"), ParseError);
  try {
    parse_term("x**y");
  } catch (ParseError const& e) {
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("quasi-identity parsing") {
  QuasiIdentity q = parse_quasi_identity("x = y, y = z => x = z");
  CHECK(q.premises.size() == 2);
  CHECK(q.var_count == 3);
  QuasiIdentity plain = parse_quasi_identity("x*x = x");
  CHECK(plain.premises.empty());
}

TEST_CASE("pathological nesting is rejected, not crashed on") {
  std::string deep(100000, '(');
  deep += "x";
  deep.append(100000, ')');
  CHECK_THROWS_AS(parse_term(deep), ParseError);
  // within the cap, deeply right-nested terms still evaluate
  std::string nested = "x";
  for (int i = 0; i < 150; ++i) {
    nested = "x*(" + nested + ")";
  }
  IMonoid m3 = builtin("M3");
  CHECK(check_identity(m3, parse_identity(nested + " = " + nested)).holds);
}

TEST_CASE("dualize swaps operations and constants") {
  CHECK(dualize(parse_term("(x+1)'*y")) == parse_term("(x*0)'+y"));
  CHECK(dualize(parse_term("x")) == parse_term("x"));
  CHECK(dualize(parse_term("x*(y+z)")) == parse_term("x+(y*z)"));
  for (auto const& e : catalog()) {
    Term lhs = e.law.conclusion.lhs;
    CHECK(dualize(dualize(lhs)) == lhs);
  }
}

TEST_CASE("print round-trips through parse on the whole catalog") {
  for (auto const& e : catalog()) {
    QuasiIdentity reparsed = parse_quasi_identity(print_quasi_identity(e.law));
    REQUIRE(reparsed.premises.size() == e.law.premises.size());
    for (std::size_t i = 0; i < reparsed.premises.size(); ++i) {
      CHECK(reparsed.premises[i].lhs == e.law.premises[i].lhs);
      CHECK(reparsed.premises[i].rhs == e.law.premises[i].rhs);
    }
    CHECK(reparsed.conclusion.lhs == e.law.conclusion.lhs);
    CHECK(reparsed.conclusion.rhs == e.law.conclusion.rhs);
  }
}

TEST_CASE("evaluation on M3") {
  IMonoid m3 = builtin("M3");
  CHECK(eval(parse_term("x*y"), m3, {1, 0}) == 0);  // 1*0 = 0
  CHECK(eval(parse_term("0*x"), m3, {2}) == 0);     // 0*eps = 0
  for (elem a = 0; a < 3; ++a) {
    CHECK(eval(parse_term("x''"), m3, {a}) == a);
  }
  CHECK_THROWS_AS(eval(parse_term("x*y"), m3, {0}), std::out_of_range);
  CHECK_THROWS_AS(eval(parse_term("x"), m3, {7}), std::out_of_range);
}

TEST_CASE("join evaluates as the derived operation") {
  Term direct = parse_term("x+y");
  Term expanded = parse_term("(x'*y')'");
  std::vector<IMonoid> algebras;
  for (auto const& name : builtin_names()) {
    algebras.push_back(builtin(name));
  }
  for (int n = 1; n <= 5; ++n) {
    for (auto const& m : imono::testing::models_cached("uband", n)) {
      algebras.push_back(m);
    }
  }
  for (auto const& a : algebras) {
    for (elem x = 0; x < a.n; ++x) {
      for (elem y = 0; y < a.n; ++y) {
        CHECK(eval(direct, a, {x, y}) == eval(expanded, a, {x, y}));
      }
    }
  }
}

TEST_CASE("check_identity on M3") {
  IMonoid m3 = builtin("M3");
  CHECK(check_identity(m3, parse_identity("x*(y+z) = x*y + x*z")).holds);

  CheckResult r = check_identity(m3, parse_identity("(x+y)*z = x*z + y*z"));
  REQUIRE_FALSE(r.holds);
  // (1+eps)*0 = 0 while 1*0 + eps*0 = eps
  CHECK(r.witness == std::vector<elem>{1, 2, 0});
  CHECK(r.lhs_value == 0);
  CHECK(r.rhs_value == 2);

  IMonoid triv = builtin("TRIVIAL");
  CHECK(check_identity(triv, parse_identity("x*y = y+x")).holds);
}

TEST_CASE("check_identity budget refuses, never samples") {
  IMonoid m3 = builtin("M3");
  Identity huge = parse_identity("a*b*c*d*e*f = f*e*d*c*b*a");
  CHECK_THROWS_AS(check_identity(m3, huge, 10.0), BudgetError);
}

TEST_CASE("quasi-identity checking") {
  IMonoid m3 = builtin("M3");
  QuasiIdentity split = parse_quasi_identity("1 = 0 => x = y");
  CHECK(check_quasi_identity(m3, split).holds);

  IMonoid c2 = builtin("C2");
  CheckResult r = check_quasi_identity(c2, split);
  REQUIRE_FALSE(r.holds);
  CHECK(r.witness == std::vector<elem>{0, 1});  // x = unit, y = the other

  QuasiIdentity below = parse_quasi_identity("x = x' => x = x*0");
  CHECK(check_quasi_identity(m3, below).holds);
}

TEST_CASE("duality transfer on builtins and small enumerated i-monoids") {
  std::vector<IMonoid> algebras;
  for (auto const& name : builtin_names()) {
    algebras.push_back(builtin(name));
  }
  for (int n = 1; n <= 4; ++n) {
    for (auto const& m : imono::testing::models_cached("uband", n)) {
      algebras.push_back(m);
    }
  }
  for (auto const& alg : algebras) {
    for (auto const& e : catalog()) {
      if (!e.is_identity()) {
        continue;
      }
      bool direct = check_identity(alg, e.identity()).holds;
      bool dual = check_identity(alg, dualize(e.identity())).holds;
      CHECK(direct == dual);
    }
  }
}

TEST_CASE("mirror matches the opposite algebra") {
  for (auto const& name : builtin_names()) {
    IMonoid a = builtin(name);
    IMonoid op = opposite(a);
    for (auto const& key : {"leftdist", "leftabs", "paradist", "localcomm"}) {
      Identity const& id = catalog_find(key)->identity();
      CHECK(check_identity(a, mirror(id)).holds
            == check_identity(op, id).holds);
    }
  }
}
