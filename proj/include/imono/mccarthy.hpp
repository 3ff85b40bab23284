#ifndef IMONO_MCCARTHY_HPP_
#define IMONO_MCCARTHY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "imonoid.hpp"
#include "structure.hpp"

namespace imono {

// The order a <= b iff a + b = b. Reflexivity and transitivity hold in every
// i-monoid; antisymmetry is exactly left-regularity of +.
struct InducedOrder {
  int n = 0;
  std::vector<std::uint8_t> leq;  // n*n, reflexive

  bool at(elem a, elem b) const {
    return leq[static_cast<std::size_t>(a) * n + b] != 0;
  }
};

class OrderError : public std::runtime_error {
 public:
  OrderError(elem a, elem b)
      : std::runtime_error("not a partial order: antisymmetry fails at ("
                           + std::to_string(a) + "," + std::to_string(b) + ")"),
        pair{a, b} {}

  std::pair<elem, elem> pair;
};

InducedOrder induced_order(IMonoid const& alg);

// The elements fixed by z -> z*0, a join-semilattice under the restriction
// of + with least element 0. Requires a McCarthy algebra.
struct Skeleton {
  std::vector<elem> elems;  // sorted algebra elements
  int bottom = 0;           // local index of 0
  std::vector<int> join;    // |elems|^2, local indices

  int size() const {
    return static_cast<int>(elems.size());
  }

  int local(elem e) const;  // -1 if not in the skeleton
  int join_at(int i, int j) const {
    return join[static_cast<std::size_t>(i) * elems.size() + j];
  }
};

Skeleton skeleton(IMonoid const& alg);

// The interval [i, i+1] = {a : a*0 = i}, a Boolean algebra under the
// restricted operations (unit = top of the fiber).
struct Fiber {
  elem bottom = 0;  // the skeleton element i
  elem top = 0;     // i + 1
  std::vector<elem> elems;  // sorted
  IMonoid restricted;

  int local(elem e) const;  // -1 if absent
};

std::vector<Fiber> fibers(IMonoid const& alg);  // parallel to skeleton().elems

// theta_i: the congruence x ~ y iff i + x = i + y, equal to Cg(i+1, 1) and
// to Cg(i, 0); i must be a skeleton element.
Congruence kernel_theta(IMonoid const& alg, elem skeleton_elem);

// Semilattice direct system of Boolean algebras: skeleton, fibers, and the
// transition homomorphisms p_ij(x) = j + x for i <= j. All invariants
// (p_ii identity, p_jk o p_ij = p_ik, each p_ij a homomorphism into B_j) are
// verified before returning; a failure throws InternalError.
struct DirectSystem {
  Skeleton sk;
  std::vector<Fiber> fib;
  // (local i, local j) with i <= j -> map as vector over fiber-i local
  // positions, values are algebra elements of fiber j.
  std::map<std::pair<int, int>, std::vector<elem>> trans;
};

DirectSystem decompose(IMonoid const& alg);

struct DecoratedPoset {
  int n = 0;
  std::vector<std::uint8_t> leq;   // n*n, reflexive partial order
  std::vector<std::uint8_t> skel;  // membership in the semilattice skeleton
  std::string name;

  bool at(elem a, elem b) const {
    return leq[static_cast<std::size_t>(a) * n + b] != 0;
  }

  bool in_skeleton(elem a) const {
    return skel[a] != 0;
  }
};

DecoratedPoset decorated_poset(IMonoid const& alg);

class ReconstructError : public std::runtime_error {
 public:
  ReconstructError(std::string step, std::string const& what)
      : std::runtime_error("not a McCarthy decorated poset (" + step + "): "
                           + what),
        _step(std::move(step)) {}

  std::string const& step() const noexcept {
    return _step;
  }

 private:
  std::string _step;
};

// Rebuilds the algebra from its decorated poset: 0 is the least element, 1
// the top of its fiber, involution by fiber-relative complementation, and
// products located through skeleton joins, the action maximum, and a final
// meet. Every maximum/join/meet the procedure takes must exist and be
// unique; a failure names the step (ties are never broken silently, since
// genuine inputs never produce them).
IMonoid reconstruct(DecoratedPoset const& dp);

bool poset_isomorphic(DecoratedPoset const& a, DecoratedPoset const& b,
                      bool use_decoration = true);

struct BotSemilattice {
  int n = 0;
  std::vector<elem> join;  // n*n
  elem bottom = 0;
  std::string name;

  elem at(elem a, elem b) const {
    return join[static_cast<std::size_t>(a) * n + b];
  }
};

// Checks associativity, commutativity, idempotency and that bottom is the
// unit of join; throws ValidationError otherwise.
BotSemilattice validate_semilattice(BotSemilattice s);

// The McCarthy algebra I[2] over a bottomed semilattice: every fiber is a
// copy of 2, element (i, x) is linearized as 2i + x, and
// (x_i)*(y_j) = (x&y) at fiber i (when x = 0) or i v j (when x = 1).
// Its skeleton is isomorphic to the input.
IMonoid construct_I2(BotSemilattice const& sl);

// I[2] over the semilattice with a new top adjoined, then collapsed along
// the top fiber; the result's top fiber is the singleton {eps}.
IMonoid construct_I2_eps(BotSemilattice const& sl);

// For McCarthy algebras with two-element bottom fiber: the homomorphism onto
// (a subalgebra of) M3 sending B_0 identically and everything else to eps.
// Returns the map into builtin M3's indexing [0, 1, eps].
std::vector<elem> collapse_to_M3(IMonoid const& alg);

struct OrderScanHit {
  int n;
  IMonoid a;
  IMonoid b;  // non-isomorphic algebras with order-isomorphic induced posets
};

// Buckets the enumerated McCarthy models of each size by undecorated-poset
// isomorphism and reports buckets holding more than one algebra class.
std::vector<OrderScanHit> scan_order_conjecture(
    int max_n, EnumerateConfig const& config = {});

}  // namespace imono

#endif  // IMONO_MCCARTHY_HPP_
