#ifndef IMONO_CATALOG_HPP_
#define IMONO_CATALOG_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "term.hpp"

namespace imono {

// One catalog entry: a law (identity, or quasi-identity when premises are
// nonempty) under a stable key. Konikowska's postulates are stored verbatim
// under keys A1..A16p ("p" marks the primed/dual axiom); chains like
// (A4) s = t = u are split into A4a/A4b.
struct NamedIdentity {
  std::string key;
  QuasiIdentity law;
  std::string description;

  bool is_identity() const {
    return law.premises.empty();
  }

  Identity const& identity() const {
    return law.conclusion;
  }
};

std::vector<NamedIdentity> const& catalog();
NamedIdentity const* catalog_find(std::string_view key);

// A conjunction of catalog entries. Predefined bundles:
//   UBAND       {}                       (the i-monoid axioms are structural)
//   MCCARTHY[_A] leftdist localdecomp leftbdd comlocalunits
//   MCCARTHY_B  divis orthodist leftabs localcomm
//   MCCARTHY_C  paradist leftbdd wkcomm
//   MCCARTHY_OP mirrored MCCARTHY_A
//   KONIKOWSKA  A1..A16p
//   BOOLEAN     MCCARTHY_A + comm
//   IBSL        comm divis
//   KLEENE      comm leftdist leftbdd kleenek
struct TheorySpec {
  std::string label;
  std::vector<std::string> keys;

  static TheorySpec bundle(std::string_view name);
  // Bundle names and/or catalog keys joined by '+', e.g. "uband+invtrivial".
  static TheorySpec parse(std::string_view text);

  bool identity_only() const;
  std::vector<NamedIdentity const*> resolve() const;  // throws on unknown key
};

std::vector<std::string> const& bundle_names();

struct TheoryResult {
  bool ok = true;
  std::string failed_key;
  std::vector<elem> witness;
  elem lhs_value = 0;
  elem rhs_value = 0;
};

// Conjunction over the bundle, cheapest laws (by n^k evaluation cost) first;
// short-circuits on the first failure.
TheoryResult satisfies_theory(IMonoid const& alg, TheorySpec const& theory,
                              double budget = DEFAULT_EVAL_BUDGET);

bool is_mccarthy(IMonoid const& alg);

// Right-boundedness x*0 = 0, which for McCarthy algebras is equivalent to
// being a Boolean algebra. Throws PreconditionError when the algebra is not
// McCarthy.
bool is_boolean(IMonoid const& alg);

}  // namespace imono

#endif  // IMONO_CATALOG_HPP_
