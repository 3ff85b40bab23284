#ifndef IMONO_STRUCTURE_HPP_
#define IMONO_STRUCTURE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "imonoid.hpp"

namespace imono {

// A partition of {0..n-1} as a normalized block-id vector: block ids appear
// in order of first occurrence, so equal partitions compare equal as vectors.
struct Congruence {
  int n = 0;
  std::vector<int> block;

  static Congruence identity(int n);
  static Congruence all(int n);
  static Congruence from_blocks(int n, std::vector<int> raw_block_ids);

  int num_blocks() const;

  bool is_identity() const {
    return num_blocks() == n;
  }

  bool is_all() const {
    return num_blocks() <= 1;
  }

  bool same(elem a, elem b) const {
    return block[a] == block[b];
  }

  // Refinement order: *this <= other iff every block of *this is contained
  // in a block of other.
  bool leq(Congruence const& other) const;

  bool operator==(Congruence const& other) const = default;

  std::vector<std::vector<elem>> blocks() const;
  std::string to_string() const;
};

bool compatible(IMonoid const& alg, Congruence const& c);

Congruence cong_meet(Congruence const& a, Congruence const& b);
Congruence cong_join(Congruence const& a, Congruence const& b);

// Least congruence containing the pairs: union-find closure under the unary
// polynomial translations z -> z', z -> c*z, z -> z*c, iterated to fixpoint.
Congruence congruence_generated(IMonoid const& alg,
                                std::vector<std::pair<elem, elem>> const& pairs);

// For McCarthy algebras: the partition by the fibers of z -> a*z, which
// equals both Cg(a, 1) and Cg(a', 0).
Congruence principal_tilde(IMonoid const& alg, elem a);

struct CongruenceLattice {
  std::vector<Congruence> elements;  // deduplicated, sorted deterministically
};

// Join closure of all principal congruences; complete for finite algebras.
CongruenceLattice all_congruences(IMonoid const& alg, int size_cap = 12);

struct SIResult {
  bool irreducible = false;
  std::optional<Congruence> monolith;
};

// Subdirectly irreducible iff the meet of all non-identity congruences is
// not the identity; that meet is the monolith. Trivial algebras are not
// subdirectly irreducible.
SIResult is_subdirectly_irreducible(IMonoid const& alg, int size_cap = 12);

struct Quotient {
  IMonoid algebra;
  std::vector<elem> projection;  // parent element -> block algebra element
};

Quotient quotient(IMonoid const& alg, Congruence const& c);

struct Subalgebra {
  IMonoid algebra;
  std::vector<elem> inclusion;  // subalgebra element -> parent element
};

// Closure of subset (plus the unit, hence also 0) under * and '.
Subalgebra subalgebra_generated(IMonoid const& alg,
                                std::vector<elem> const& subset);

// All maps preserving unit, involution and multiplication, sorted
// lexicographically as map vectors. Throws BudgetError past node_cap search
// nodes.
std::vector<std::vector<elem>> homomorphisms(IMonoid const& a, IMonoid const& b,
                                             long long node_cap = 50'000'000);

// Componentwise product; element (i, j) is linearized as i*|b| + j.
IMonoid direct_product(IMonoid const& a, IMonoid const& b);

}  // namespace imono

#endif  // IMONO_STRUCTURE_HPP_
