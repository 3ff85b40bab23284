#ifndef IMONO_TERM_HPP_
#define IMONO_TERM_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "imonoid.hpp"

namespace imono {

// Terms over the signature {*, ', 1} with the derived symbols {+, 0}. Join
// and Const0 are genuine tree nodes but evaluation expands them through the
// stored operations: x + y evaluates as (x' * y')' and 0 as 1'. Trees are
// immutable; copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Const0, Const1, Mul, Join, Inv };

  Term() = default;  // the constant 1

  static Term var(int index);
  static Term zero();
  static Term one();
  static Term mul(Term lhs, Term rhs);
  static Term join(Term lhs, Term rhs);
  static Term inv(Term arg);

  Kind kind() const {
    return _kind;
  }

  int var_index() const {
    return _var;
  }

  Term const& left() const {
    return *_left;
  }

  Term const& right() const {
    return *_right;
  }

  Term const& arg() const {
    return *_left;
  }

  int max_var() const;  // -1 if ground

  bool operator==(Term const& other) const;

 private:
  Kind _kind = Kind::Const1;
  int _var = -1;
  std::shared_ptr<Term const> _left;
  std::shared_ptr<Term const> _right;
};

struct Identity {
  Term lhs;
  Term rhs;
  int var_count = 0;
  std::vector<std::string> var_names;  // size var_count

  static Identity make(Term lhs, Term rhs,
                       std::vector<std::string> var_names = {});
};

struct QuasiIdentity {
  std::vector<Identity> premises;  // may be empty; then this is an identity
  Identity conclusion;
  int var_count = 0;  // shared numbering across premises and conclusion
  std::vector<std::string> var_names;

  static QuasiIdentity make(std::vector<Identity> premises,
                            Identity conclusion);
};

// Grammar (aliases accepted on input: unicode "≈" for "=", prefix "¬t" for
// "t'"):
//   identity := term "=" term
//   quasi    := identity ("," identity)* "=>" identity
//   term     := sum ; sum := prod ("+" prod)* ; prod := factor ("*" factor)*
//   factor   := atom "'"* ; atom := "0" | "1" | var | "(" sum ")"
//   var      := [a-z] digits?
// Variables are renumbered to dense indices 0..k-1 in order of first
// occurrence (shared across all parts of a quasi-identity).
Term parse_term(std::string_view src);
Identity parse_identity(std::string_view src);
QuasiIdentity parse_quasi_identity(std::string_view src);

std::string print_term(Term const& t,
                       std::vector<std::string> const& var_names = {});
std::string print_identity(Identity const& id);
std::string print_quasi_identity(QuasiIdentity const& q);

// Swaps Mul <-> Join and Const0 <-> Const1 throughout; Var and Inv nodes are
// untouched. Involutive: dualize(dualize(t)) == t.
Term dualize(Term const& t);
Identity dualize(Identity const& id);

// Reverses the operand order of every Mul and Join node. A satisfies
// mirror(e) iff opposite(A) satisfies e.
Term mirror(Term const& t);
Identity mirror(Identity const& id);

elem eval(Term const& t, IMonoid const& alg, std::vector<elem> const& assignment);

struct CheckResult {
  bool holds = true;
  std::vector<elem> witness;  // set iff !holds
  elem lhs_value = 0;         // evaluation of the (conclusion) sides at the witness
  elem rhs_value = 0;
};

inline constexpr double DEFAULT_EVAL_BUDGET = 1e9;

// Exhaustive check over all n^k assignments, enumerated in lexicographic
// order on (x0, x1, ...); the witness is therefore the lexicographically
// first failing assignment. Throws BudgetError (never samples) when n^k
// exceeds the budget.
CheckResult check_identity(IMonoid const& alg, Identity const& id,
                           double budget = DEFAULT_EVAL_BUDGET);

// True iff every assignment satisfying all premises satisfies the conclusion.
CheckResult check_quasi_identity(IMonoid const& alg, QuasiIdentity const& q,
                                 double budget = DEFAULT_EVAL_BUDGET);

std::string format_witness(IMonoid const& alg,
                           std::vector<std::string> const& var_names,
                           std::vector<elem> const& witness);

}  // namespace imono

#endif  // IMONO_TERM_HPP_
