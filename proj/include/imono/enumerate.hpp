#ifndef IMONO_ENUMERATE_HPP_
#define IMONO_ENUMERATE_HPP_

#include <compare>
#include <optional>
#include <vector>

#include "catalog.hpp"
#include "imonoid.hpp"

namespace imono {

struct IsoResult {
  bool isomorphic = false;
  std::vector<elem> map;  // witness bijection a -> b when isomorphic
};

// Backtracking isomorphism test seeded by iterated invariant partitioning
// (unit orbit, involution fixed points, row/column value profiles).
IsoResult find_isomorphism(IMonoid const& a, IMonoid const& b);

inline bool isomorphic(IMonoid const& a, IMonoid const& b) {
  return find_isomorphism(a, b).isomorphic;
}

// Byte string [n, inv table, mul table row-major] minimized lexicographically
// over all relabelings that put the unit at index 0. Two validated algebras
// have equal canonical forms iff they are isomorphic.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  auto operator<=>(CanonicalForm const&) const = default;
};

CanonicalForm canonical_form(IMonoid const& a);

// The relabeled copy realizing canonical_form(a); display names are dropped.
IMonoid canonical_relabel(IMonoid const& a);

struct EnumerateConfig {
  int threads = 0;              // 0 = hardware concurrency
  double budget_seconds = 1800; // per (n, theory); all-or-nothing
  bool symmetry_reduction = true;
};

// All models of the theory of size n, one canonical representative per
// isomorphism class, sorted by canonical form. The theory must be
// identity-only. Search: involution fixed up to conjugacy, then
// multiplication-table completion with constraint propagation (unit row and
// column, idempotent diagonal, associativity closure, theory identities
// re-checked as their cells fill in), symmetry-reduced value selection, and
// isomorphism rejection of completed tables.
std::vector<IMonoid> enumerate_models(int n, TheorySpec const& theory,
                                      EnumerateConfig const& config = {});

struct SpectrumRow {
  int n;
  long long count;
  double seconds;
};

struct SpectrumResult {
  std::vector<SpectrumRow> rows;
  bool complete = true;  // false when the budget ran out; rows hold the prefix
};

SpectrumResult fine_spectrum(int max_n, TheorySpec const& theory,
                             EnumerateConfig const& config = {});

// Number of isomorphism classes of size-n i-monoids whose unit is not an
// involution fixed point.
long long count_subclassical(int n, EnumerateConfig const& config = {});

}  // namespace imono

#endif  // IMONO_ENUMERATE_HPP_
