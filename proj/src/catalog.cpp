#include "imono/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace imono {

namespace {

NamedIdentity entry(std::string key, std::string_view src, std::string desc) {
  return {std::move(key), parse_quasi_identity(src), std::move(desc)};
}

NamedIdentity mirrored(std::string key, std::string_view src,
                       std::string desc) {
  QuasiIdentity q = parse_quasi_identity(src);
  q.conclusion = mirror(q.conclusion);
  for (auto& p : q.premises) {
    p = mirror(p);
  }
  // reparse the printed form so variables are dense in first-occurrence order
  q = parse_quasi_identity(print_quasi_identity(q));
  return {std::move(key), std::move(q), std::move(desc)};
}

std::vector<NamedIdentity> build_catalog() {
  std::vector<NamedIdentity> c;
  c.push_back(entry("idem", "x*x = x", "idempotency"));
  c.push_back(entry("leftreg", "x*y*x = x*y", "left-regularity"));
  c.push_back(entry("rightreg", "x*y*x = y*x", "right-regularity"));
  c.push_back(entry("comm", "x*y = y*x", "commutativity"));
  c.push_back(entry("leftdist", "x*(y+z) = x*y + x*z", "left-distributivity"));
  c.push_back(entry("rightdist", "(x+y)*z = x*z + y*z", "right-distributivity"));
  c.push_back(entry("orthodist", "(x+x')*y = x*y + x'*y",
                    "right-orthodistributivity"));
  c.push_back(entry("leftorthodist", "x*(y+y') = x*y + x*y'",
                    "left-orthodistributivity"));
  c.push_back(entry("localunits", "(x+1)*x = x", "local units"));
  c.push_back(entry("localcomp", "x+1 = x+x'", "locally-complemented"));
  c.push_back(entry("divis", "x*y = x*(x'+y)", "left-divisibility"));
  c.push_back(entry("localdecomp", "(x+1)*y = x*y + x'*y", "left-decomposition"));
  c.push_back(entry("wkterms", "(x+1)*y*x = x*y + y*x", "wk-terms"));
  c.push_back(entry("paradist", "(x+y)*z = x*z + x'*y*z",
                    "right-paradistributivity"));
  c.push_back(entry("comlocalunits", "(x+1)*(y+1) = (y+1)*(x+1)",
                    "local-unit commutativity"));
  c.push_back(entry("localcomm", "(y+1)*(x*y) = (x+1)*(y*x)",
                    "local commutativity"));
  c.push_back(entry("wkcomm", "x*y + y*x = y*x + x*y", "wk-commutativity"));
  c.push_back(entry("leftbdd", "0*x = 0", "left-bounded"));
  c.push_back(entry("rightbdd", "x*0 = 0", "right-bounded"));
  c.push_back(entry("leftabs", "x*(x+y) = x", "left-absorption"));
  c.push_back(entry("rightabs", "(x+y)*x = x", "right-absorption"));
  c.push_back(entry("unitcoh", "x+1 = x'+1", "unit-coherence"));
  c.push_back(entry("dramcon", "x*y*x' = x*y*0", "dramatic conjugation"));
  c.push_back(entry("leftcoh", "x*0 + y = (x+1)*y", "left-coherence"));
  c.push_back(entry("paracomm", "x*y = (x'+y)*x", "left-paracommutativity"));
  c.push_back(entry("orthocoh", "x*y + x'*z = (x'+y)*(x+z)",
                    "left-orthocoherence"));
  c.push_back(entry("orthocomm", "x*y + x'*z = x'*z + x*y",
                    "left-orthocommutativity"));
  c.push_back(entry("kleenek", "x*x' + (y+y') = y+y'", "Kleene axiom"));
  c.push_back(entry("muleqjoin", "x*y = x+y", "conjunction equals disjunction"));
  c.push_back(entry("splitting", "1 = 0", "splitting identity"));
  c.push_back(entry("subclassical", "1 = 0 => x = y", "subclassical quasi-identity"));
  c.push_back(entry("invtrivial", "x' = x", "trivial involution"));
  c.push_back(entry("orthocomp", "x*x' = 0", "orthocomplemented"));

  // Konikowska's postulates, with t(x) = x+x' and f(x) = x*x' spelled out.
  // A16p is stored as the De Morgan dual of A16 (right-paradistributivity).
  c.push_back(entry("A1", "x'' = x", "Konikowska A1"));
  c.push_back(entry("A2", "1' = 0", "Konikowska A2"));
  c.push_back(entry("A3", "y*y' + x + y = x*x' + y + x", "Konikowska A3"));
  c.push_back(entry("A3p", "(y+y')*(x*y) = (x+x')*(y*x)", "Konikowska A3'"));
  c.push_back(entry("A4a", "x+y = x + x'*y", "Konikowska A4 (first)"));
  c.push_back(entry("A4b", "x+y = x'*y + x", "Konikowska A4 (second)"));
  c.push_back(entry("A4pa", "x*y = x*(x'+y)", "Konikowska A4' (first)"));
  c.push_back(entry("A4pb", "x*y = (x'+y)*x", "Konikowska A4' (second)"));
  c.push_back(entry("A5", "x+y+x = x+y", "Konikowska A5"));
  c.push_back(entry("A5p", "x*y*x = x*y", "Konikowska A5'"));
  c.push_back(entry("A6", "x = x + x*y", "Konikowska A6"));
  c.push_back(entry("A6p", "x = x*(x+y)", "Konikowska A6'"));
  c.push_back(entry("A7", "x+x = x", "Konikowska A7"));
  c.push_back(entry("A7p", "x*x = x", "Konikowska A7'"));
  c.push_back(entry("A8", "1+x = 1", "Konikowska A8"));
  c.push_back(entry("A8p", "0*x = 0", "Konikowska A8'"));
  c.push_back(entry("A9a", "0+x = x", "Konikowska A9 (first)"));
  c.push_back(entry("A9b", "x+0 = x", "Konikowska A9 (second)"));
  c.push_back(entry("A9pa", "1*x = x", "Konikowska A9' (first)"));
  c.push_back(entry("A9pb", "x*1 = x", "Konikowska A9' (second)"));
  c.push_back(entry("A10", "x+x' = x'+x", "Konikowska A10"));
  c.push_back(entry("A10p", "x*x' = x'*x", "Konikowska A10'"));
  c.push_back(entry("A11", "x+x'+1 = x+x'", "Konikowska A11"));
  c.push_back(entry("A11p", "x*x'*0 = x*x'", "Konikowska A11'"));
  c.push_back(entry("A12", "x = (x+x')*x", "Konikowska A12"));
  c.push_back(entry("A12p", "x = x*x' + x", "Konikowska A12'"));
  c.push_back(entry("A13", "(x+y)' = x'*y'", "Konikowska A13"));
  c.push_back(entry("A13p", "(x*y)' = x'+y'", "Konikowska A13'"));
  c.push_back(entry("A14", "x+(y+z) = (x+y)+z", "Konikowska A14"));
  c.push_back(entry("A14p", "x*(y*z) = (x*y)*z", "Konikowska A14'"));
  c.push_back(entry("A15", "x + y*z = (x+y)*(x+z)", "Konikowska A15"));
  c.push_back(entry("A15p", "x*(y+z) = x*y + x*z", "Konikowska A15'"));
  c.push_back(entry("A16", "x*y + z = (x+z)*(x'+y+z)", "Konikowska A16"));
  c.push_back(entry("A16p", "(x+y)*z = x*z + x'*y*z", "Konikowska A16'"));

  // Mirrored McCarthy axioms (the right-handed variety of M3^op).
  c.push_back(mirrored("mleftdist", "x*(y+z) = x*y + x*z",
                       "mirrored left-distributivity"));
  c.push_back(mirrored("mlocaldecomp", "(x+1)*y = x*y + x'*y",
                       "mirrored left-decomposition"));
  c.push_back(mirrored("mleftbdd", "0*x = 0", "mirrored left-bounded"));
  c.push_back(mirrored("mcomlocalunits", "(x+1)*(y+1) = (y+1)*(x+1)",
                       "mirrored local-unit commutativity"));
  return c;
}

}  // namespace

std::vector<NamedIdentity> const& catalog() {
  static std::vector<NamedIdentity> const c = build_catalog();
  return c;
}

NamedIdentity const* catalog_find(std::string_view key) {
  static std::map<std::string, NamedIdentity const*, std::less<>> const index =
      [] {
        std::map<std::string, NamedIdentity const*, std::less<>> m;
        for (auto const& e : catalog()) {
          m.emplace(e.key, &e);
        }
        if (m.size() != catalog().size()) {
          throw InternalError("duplicate catalog key");
        }
        return m;
      }();
  auto it = index.find(key);
  return it == index.end() ? nullptr : it->second;
}

namespace {

std::map<std::string, std::vector<std::string>> const& bundles() {
  static std::map<std::string, std::vector<std::string>> const b = [] {
    std::map<std::string, std::vector<std::string>> m;
    m["uband"] = {};
    m["mccarthy"] = {"leftdist", "localdecomp", "leftbdd", "comlocalunits"};
    m["mccarthy_a"] = m["mccarthy"];
    m["mccarthy_b"] = {"divis", "orthodist", "leftabs", "localcomm"};
    m["mccarthy_c"] = {"paradist", "leftbdd", "wkcomm"};
    m["mccarthy_op"] = {"mleftdist", "mlocaldecomp", "mleftbdd",
                        "mcomlocalunits"};
    std::vector<std::string> kon;
    for (auto const& e : catalog()) {
      if (e.key[0] == 'A' && e.key.size() >= 2 && std::isdigit(e.key[1])) {
        kon.push_back(e.key);
      }
    }
    m["konikowska"] = kon;
    m["boolean"] = {"leftdist", "localdecomp", "leftbdd", "comlocalunits",
                    "comm"};
    m["ibsl"] = {"comm", "divis"};
    m["kleene"] = {"comm", "leftdist", "leftbdd", "kleenek"};
    return m;
  }();
  return b;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::vector<std::string> const& bundle_names() {
  static std::vector<std::string> const names = [] {
    std::vector<std::string> out;
    for (auto const& [k, v] : bundles()) {
      out.push_back(k);
    }
    return out;
  }();
  return names;
}

TheorySpec TheorySpec::bundle(std::string_view name) {
  auto it = bundles().find(lower(name));
  if (it == bundles().end()) {
    throw std::invalid_argument("unknown theory bundle: " + std::string(name));
  }
  return {it->first, it->second};
}

TheorySpec TheorySpec::parse(std::string_view text) {
  TheorySpec spec;
  spec.label = std::string(text);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('+', pos);
    std::string_view part = text.substr(
        pos, next == std::string_view::npos ? text.size() - pos : next - pos);
    if (!part.empty()) {
      auto it = bundles().find(lower(part));
      if (it != bundles().end()) {
        spec.keys.insert(spec.keys.end(), it->second.begin(), it->second.end());
      } else if (catalog_find(part) != nullptr) {
        spec.keys.emplace_back(part);
      } else {
        throw std::invalid_argument("unknown theory bundle or catalog key: "
                                    + std::string(part));
      }
    }
    if (next == std::string_view::npos) {
      break;
    }
    pos = next + 1;
  }
  return spec;
}

std::vector<NamedIdentity const*> TheorySpec::resolve() const {
  std::vector<NamedIdentity const*> out;
  for (auto const& key : keys) {
    NamedIdentity const* e = catalog_find(key);
    if (e == nullptr) {
      throw std::invalid_argument("unknown catalog key: " + key);
    }
    out.push_back(e);
  }
  return out;
}

bool TheorySpec::identity_only() const {
  for (auto const* e : resolve()) {
    if (!e->is_identity()) {
      return false;
    }
  }
  return true;
}

namespace {

double law_cost(IMonoid const& alg, NamedIdentity const& e) {
  return std::pow(static_cast<double>(alg.n), e.law.var_count);
}

}  // namespace

TheoryResult satisfies_theory(IMonoid const& alg, TheorySpec const& theory,
                              double budget) {
  std::vector<NamedIdentity const*> laws = theory.resolve();
  std::stable_sort(laws.begin(), laws.end(),
                   [&](NamedIdentity const* a, NamedIdentity const* b) {
                     return law_cost(alg, *a) < law_cost(alg, *b);
                   });
  for (auto const* e : laws) {
    CheckResult r = e->is_identity()
                        ? check_identity(alg, e->identity(), budget)
                        : check_quasi_identity(alg, e->law, budget);
    if (!r.holds) {
      return {false, e->key, r.witness, r.lhs_value, r.rhs_value};
    }
  }
  return {};
}

bool is_mccarthy(IMonoid const& alg) {
  return satisfies_theory(alg, TheorySpec::bundle("mccarthy")).ok;
}

bool is_boolean(IMonoid const& alg) {
  if (!is_mccarthy(alg)) {
    throw PreconditionError("not a McCarthy algebra");
  }
  return check_identity(alg, catalog_find("rightbdd")->identity()).holds;
}

}  // namespace imono
