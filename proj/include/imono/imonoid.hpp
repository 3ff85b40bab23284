#ifndef IMONO_IMONOID_HPP_
#define IMONO_IMONOID_HPP_

#include <array>
#include <string>
#include <vector>

#include "common.hpp"

namespace imono {

// A finite involutive idempotent monoid ("i-monoid"): an idempotent monoid
// <M, *, 1> together with a unary involution ' satisfying x'' = x. The
// universe is {0..n-1}. Only *, ' and the unit are stored; the disjunction
// x + y := (x' * y')' and the constant 0 := 1' are derived, so De Morgan
// duality holds by construction rather than by bookkeeping.
struct IMonoid {
  int n = 0;
  elem unit = 0;
  std::vector<elem> inv;  // length n
  std::vector<elem> mul;  // n*n, row-major: mul[a*n+b] = a*b
  std::string name;
  std::vector<std::string> element_names;  // optional display names

  elem at(elem a, elem b) const {
    return mul[static_cast<std::size_t>(a) * n + b];
  }

  elem inv_at(elem a) const {
    return inv[a];
  }

  elem zero() const {
    return inv[unit];
  }

  elem join_at(elem a, elem b) const {
    return inv[at(inv[a], inv[b])];
  }

  // a <= b in the order induced by +, i.e. a + b = b.
  bool leq(elem a, elem b) const {
    return join_at(a, b) == b;
  }

  std::string display(elem e) const;

  bool same_tables(IMonoid const& other) const {
    return n == other.n && unit == other.unit && inv == other.inv
           && mul == other.mul;
  }
};

struct AxiomViolation {
  std::string axiom;            // "associativity", "idempotency", "unit", "involution"
  std::array<elem, 3> witness;  // unused positions hold 0
  std::string message;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;

  bool ok() const {
    return violations.empty();
  }

  std::string to_string() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);

  ValidationReport const& report() const noexcept {
    return _report;
  }

 private:
  ValidationReport _report;
};

// Checks every i-monoid axiom on the raw tables, reporting one witness per
// violated axiom. Throws std::invalid_argument if the tables are malformed
// (wrong lengths or out-of-range entries).
ValidationReport validate_report(IMonoid const& raw);

// Returns the algebra unchanged if it satisfies all axioms, otherwise throws
// ValidationError carrying the full report.
IMonoid validate(IMonoid raw);

// The named finite algebras used throughout: TRIVIAL, 2, C2, C3, L3, R3,
// C3S, L3S, R3S, WK, SK, M3, M3OP. Tables match the published figures;
// 3-element algebras over {0,1,eps} use universe order [0, 1, eps].
IMonoid builtin(std::string const& name);

std::vector<std::string> const& builtin_names();

// Transposes multiplication (the mirror algebra A^op).
IMonoid opposite(IMonoid const& a);

// The De Morgan dual <M, +, ', 0> realized as a primitive table:
// mul'[a][b] = (a' * b')', unit' = 1'. Isomorphic to the original via x -> x'.
IMonoid dual_algebra(IMonoid const& a);

}  // namespace imono

#endif  // IMONO_IMONOID_HPP_
