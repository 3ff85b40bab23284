#include "imono/mccarthy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "imono/catalog.hpp"

namespace imono {

namespace {

void require_mccarthy(IMonoid const& alg, char const* who) {
  if (!is_mccarthy(alg)) {
    throw PreconditionError(std::string(who) + ": not a McCarthy algebra");
  }
}

}  // namespace

InducedOrder induced_order(IMonoid const& alg) {
  InducedOrder ord;
  ord.n = alg.n;
  ord.leq.assign(static_cast<std::size_t>(alg.n) * alg.n, 0);
  for (elem a = 0; a < alg.n; ++a) {
    for (elem b = 0; b < alg.n; ++b) {
      ord.leq[static_cast<std::size_t>(a) * alg.n + b] =
          alg.join_at(a, b) == b ? 1 : 0;
    }
  }
  for (elem a = 0; a < alg.n; ++a) {
    for (elem b = 0; b < alg.n; ++b) {
      if (a != b && ord.at(a, b) && ord.at(b, a)) {
        throw OrderError(a, b);
      }
    }
  }
  return ord;
}

int Skeleton::local(elem e) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), e);
  if (it == elems.end() || *it != e) {
    return -1;
  }
  return static_cast<int>(it - elems.begin());
}

Skeleton skeleton(IMonoid const& alg) {
  require_mccarthy(alg, "skeleton");
  Skeleton sk;
  for (elem a = 0; a < alg.n; ++a) {
    if (alg.at(a, alg.zero()) == a) {
      sk.elems.push_back(a);
    }
  }
  int m = static_cast<int>(sk.elems.size());
  sk.bottom = sk.local(alg.zero());
  if (sk.bottom < 0) {
    throw InternalError("skeleton: 0 is not fixed by z -> z*0");
  }
  sk.join.assign(static_cast<std::size_t>(m) * m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      elem v = alg.join_at(sk.elems[i], sk.elems[j]);
      int lv = sk.local(v);
      if (lv < 0) {
        throw InternalError("skeleton: not closed under +");
      }
      sk.join[static_cast<std::size_t>(i) * m + j] = lv;
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (sk.join_at(i, j) != sk.join_at(j, i)) {
        throw InternalError("skeleton: + not commutative on the skeleton");
      }
    }
  }
  return sk;
}

int Fiber::local(elem e) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), e);
  if (it == elems.end() || *it != e) {
    return -1;
  }
  return static_cast<int>(it - elems.begin());
}

std::vector<Fiber> fibers(IMonoid const& alg) {
  Skeleton sk = skeleton(alg);
  std::vector<Fiber> out;
  std::vector<bool> seen(alg.n, false);
  for (elem i : sk.elems) {
    Fiber f;
    f.bottom = i;
    f.top = alg.join_at(i, alg.unit);
    for (elem a = 0; a < alg.n; ++a) {
      if (alg.at(a, alg.zero()) == i) {
        f.elems.push_back(a);
        seen[a] = true;
      }
    }
    // restricted algebra, unit at the fiber top
    IMonoid r;
    r.n = static_cast<int>(f.elems.size());
    std::vector<int> local(alg.n, -1);
    for (int k = 0; k < r.n; ++k) {
      local[f.elems[k]] = k;
    }
    r.unit = static_cast<elem>(local[f.top]);
    r.inv.resize(r.n);
    r.mul.resize(static_cast<std::size_t>(r.n) * r.n);
    for (int x = 0; x < r.n; ++x) {
      int xi = local[alg.inv_at(f.elems[x])];
      if (xi < 0) {
        throw InternalError("fibers: fiber not closed under involution");
      }
      r.inv[x] = static_cast<elem>(xi);
      for (int y = 0; y < r.n; ++y) {
        int p = local[alg.at(f.elems[x], f.elems[y])];
        if (p < 0) {
          throw InternalError("fibers: fiber not closed under *");
        }
        r.mul[static_cast<std::size_t>(x) * r.n + y] = static_cast<elem>(p);
      }
    }
    f.restricted = validate(std::move(r));
    out.push_back(std::move(f));
  }
  for (elem a = 0; a < alg.n; ++a) {
    if (!seen[a]) {
      throw InternalError("fibers: element missed by every fiber");
    }
  }
  return out;
}

Congruence kernel_theta(IMonoid const& alg, elem skeleton_elem) {
  require_mccarthy(alg, "kernel_theta");
  if (skeleton_elem >= alg.n
      || alg.at(skeleton_elem, alg.zero()) != skeleton_elem) {
    throw PreconditionError("kernel_theta: not a skeleton element");
  }
  std::vector<int> raw(alg.n);
  for (elem z = 0; z < alg.n; ++z) {
    raw[z] = alg.join_at(skeleton_elem, z);
  }
  return Congruence::from_blocks(alg.n, raw);
}

DirectSystem decompose(IMonoid const& alg) {
  DirectSystem ds;
  ds.sk = skeleton(alg);
  ds.fib = fibers(alg);
  int m = ds.sk.size();
  for (int i = 0; i < m; ++i) {
    if (!is_boolean(ds.fib[i].restricted)) {
      throw InternalError("decompose: fiber is not a Boolean algebra");
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (ds.sk.join_at(i, j) != j) {
        continue;  // need i <= j in the skeleton
      }
      std::vector<elem> p;
      for (elem x : ds.fib[i].elems) {
        elem y = alg.join_at(ds.fib[j].bottom, x);
        if (ds.fib[j].local(y) < 0) {
          throw InternalError("decompose: transition leaves the target fiber");
        }
        p.push_back(y);
      }
      ds.trans[{i, j}] = std::move(p);
    }
  }
  // p_ii identity
  for (int i = 0; i < m; ++i) {
    auto const& p = ds.trans.at({i, i});
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] != ds.fib[i].elems[k]) {
        throw InternalError("decompose: p_ii is not the identity");
      }
    }
  }
  // functoriality p_jk o p_ij = p_ik on chains i <= j <= k
  for (auto const& [ij, pij] : ds.trans) {
    auto [i, j] = ij;
    for (int k = 0; k < m; ++k) {
      if (ds.sk.join_at(j, k) != k) {
        continue;
      }
      auto const& pjk = ds.trans.at({j, k});
      auto const& pik = ds.trans.at({i, k});
      for (std::size_t t = 0; t < pij.size(); ++t) {
        int lj = ds.fib[j].local(pij[t]);
        if (pjk[lj] != pik[t]) {
          throw InternalError("decompose: p_jk o p_ij != p_ik");
        }
      }
    }
  }
  // each p_ij a homomorphism of the fiber algebras
  for (auto const& [ij, p] : ds.trans) {
    auto [i, j] = ij;
    Fiber const& fi = ds.fib[i];
    Fiber const& fj = ds.fib[j];
    if (p[fi.local(fi.top)] != fj.top || p[fi.local(fi.bottom)] != fj.bottom) {
      throw InternalError("decompose: p_ij does not preserve the bounds");
    }
    for (elem x : fi.elems) {
      if (alg.inv_at(p[fi.local(x)])
          != p[fi.local(alg.inv_at(x))]) {
        // fiber complement is the ambient involution restricted
        throw InternalError("decompose: p_ij does not preserve complement");
      }
      for (elem y : fi.elems) {
        if (alg.at(p[fi.local(x)], p[fi.local(y)])
            != p[fi.local(alg.at(x, y))]) {
          throw InternalError("decompose: p_ij does not preserve *");
        }
      }
    }
  }
  return ds;
}

DecoratedPoset decorated_poset(IMonoid const& alg) {
  require_mccarthy(alg, "decorated_poset");
  InducedOrder ord = induced_order(alg);
  DecoratedPoset dp;
  dp.n = alg.n;
  dp.leq = ord.leq;
  dp.skel.assign(alg.n, 0);
  for (elem a = 0; a < alg.n; ++a) {
    if (alg.at(a, alg.zero()) == a) {
      dp.skel[a] = 1;
    }
  }
  dp.name = alg.name;
  return dp;
}

// ---------------------------------------------------------------------
// Reconstruction from a decorated poset.
// ---------------------------------------------------------------------

namespace {

class Rebuilder {
 public:
  explicit Rebuilder(DecoratedPoset const& dp) : _p(dp), _n(dp.n) {}

  IMonoid run() {
    check_partial_order();
    find_zero();
    locate_fibers();
    build_involution();
    build_mul();
    IMonoid out;
    out.n = _n;
    out.unit = _one;
    out.inv = _inv;
    out.mul = _mul;
    out.name = _p.name;
    try {
      out = validate(std::move(out));
    } catch (ValidationError const& e) {
      throw ReconstructError("validate", e.what());
    }
    TheoryResult tr = satisfies_theory(out, TheorySpec::bundle("mccarthy"));
    if (!tr.ok) {
      throw ReconstructError("theory", "reconstructed table fails " + tr.failed_key);
    }
    DecoratedPoset back = decorated_poset(out);
    if (back.leq != _p.leq || back.skel != _p.skel) {
      throw ReconstructError("poset-mismatch",
                             "reconstructed algebra induces a different poset");
    }
    return out;
  }

 private:
  bool le(elem a, elem b) const {
    return _p.at(a, b);
  }

  void check_partial_order() {
    for (elem a = 0; a < _n; ++a) {
      if (!le(a, a)) {
        throw ReconstructError("order", "relation is not reflexive");
      }
      for (elem b = 0; b < _n; ++b) {
        if (a != b && le(a, b) && le(b, a)) {
          throw ReconstructError("order", "relation is not antisymmetric");
        }
        for (elem c = 0; c < _n; ++c) {
          if (le(a, b) && le(b, c) && !le(a, c)) {
            throw ReconstructError("order", "relation is not transitive");
          }
        }
      }
    }
  }

  void find_zero() {
    for (elem a = 0; a < _n; ++a) {
      bool least = true;
      for (elem b = 0; b < _n; ++b) {
        if (!le(a, b)) {
          least = false;
          break;
        }
      }
      if (least) {
        _zero = a;
        if (!_p.in_skeleton(a)) {
          throw ReconstructError("least-element",
                                 "the least element is not in the skeleton");
        }
        return;
      }
    }
    throw ReconstructError("least-element", "no least element");
  }

  // Unique maximum of a set, if any.
  std::optional<elem> max_of(std::vector<elem> const& xs) const {
    for (elem m : xs) {
      bool top = true;
      for (elem y : xs) {
        if (!le(y, m)) {
          top = false;
          break;
        }
      }
      if (top) {
        return m;
      }
    }
    return std::nullopt;
  }

  std::optional<elem> lub(elem a, elem b) const {
    std::vector<elem> ub;
    for (elem z = 0; z < _n; ++z) {
      if (le(a, z) && le(b, z)) {
        ub.push_back(z);
      }
    }
    for (elem m : ub) {
      bool least = true;
      for (elem z : ub) {
        if (!le(m, z)) {
          least = false;
          break;
        }
      }
      if (least) {
        return m;
      }
    }
    return std::nullopt;
  }

  std::optional<elem> glb(elem a, elem b) const {
    std::vector<elem> lb;
    for (elem z = 0; z < _n; ++z) {
      if (le(z, a) && le(z, b)) {
        lb.push_back(z);
      }
    }
    return max_of(lb);
  }

  void locate_fibers() {
    _oc.assign(_n, 0);
    for (elem x = 0; x < _n; ++x) {
      std::vector<elem> below;
      for (elem i = 0; i < _n; ++i) {
        if (_p.in_skeleton(i) && le(i, x)) {
          below.push_back(i);
        }
      }
      auto m = max_of(below);
      if (!m) {
        throw ReconstructError(
            "fiber-bottom", "skeleton elements below " + std::to_string(x)
                                + " have no maximum");
      }
      _oc[x] = *m;
    }
    _fiber.assign(_n, {});
    for (elem x = 0; x < _n; ++x) {
      _fiber[_oc[x]].push_back(x);
    }
    _ic.assign(_n, 0);
    for (elem x = 0; x < _n; ++x) {
      auto m = max_of(_fiber[_oc[x]]);
      if (!m) {
        throw ReconstructError(
            "fiber-top", "fiber of " + std::to_string(_oc[x]) + " has no maximum");
      }
      _ic[x] = *m;
    }
    _one = _ic[_zero];
    if (_n > 1 && _one == _zero) {
      throw ReconstructError("unit-distinct-from-zero",
                             "the fiber of 0 collapses to 0 itself");
    }
  }

  // Complement within the fiber of x: largest y in the fiber whose meet with
  // x is the fiber bottom.
  elem fiber_complement(elem x, char const* step) const {
    std::vector<elem> candidates;
    for (elem y : _fiber[_oc[x]]) {
      auto m = glb(x, y);
      if (!m) {
        throw ReconstructError(step, "meet missing inside a fiber");
      }
      if (*m == _oc[x]) {
        candidates.push_back(y);
      }
    }
    auto m = max_of(candidates);
    if (!m) {
      throw ReconstructError(step, "complement candidates have no maximum");
    }
    return *m;
  }

  void build_involution() {
    _inv.assign(_n, 0);
    for (elem x = 0; x < _n; ++x) {
      _inv[x] = fiber_complement(x, "complement");
    }
  }

  // a * j for a skeleton element j: the largest skeleton element k with
  // Oc(a) <= k <= Oc(a) v j and a' <= Ic(k).
  elem action(elem a, elem j) const {
    elem i = _oc[a];
    auto ij = lub(i, j);
    if (!ij || !_p.in_skeleton(*ij)) {
      throw ReconstructError("skeleton-join",
                             "skeleton join missing or outside the skeleton");
    }
    std::vector<elem> ks;
    for (elem k = 0; k < _n; ++k) {
      if (_p.in_skeleton(k) && le(i, k) && le(k, *ij) && le(_inv[a], _ic[k])) {
        ks.push_back(k);
      }
    }
    auto m = max_of(ks);
    if (!m) {
      throw ReconstructError("action-max", "action candidates have no maximum");
    }
    return *m;
  }

  // a * Ic(j): complement of (a' v Oc(a*j)) inside the fiber of a*j.
  elem times_fiber_top(elem a, elem j) const {
    elem aj = action(a, j);
    auto t = lub(_inv[a], aj);
    if (!t) {
      throw ReconstructError("left-unit-product",
                             "join of complement and action bottom missing");
    }
    if (_oc[*t] != aj) {
      throw ReconstructError("left-unit-product",
                             "join lands outside the action fiber");
    }
    return fiber_complement_of(*t, aj);
  }

  elem fiber_complement_of(elem t, elem fiber_bottom) const {
    std::vector<elem> candidates;
    for (elem y : _fiber[fiber_bottom]) {
      auto m = glb(t, y);
      if (!m) {
        throw ReconstructError("left-unit-product", "meet missing inside a fiber");
      }
      if (*m == fiber_bottom) {
        candidates.push_back(y);
      }
    }
    auto m = max_of(candidates);
    if (!m) {
      throw ReconstructError("left-unit-product",
                             "complement candidates have no maximum");
    }
    return *m;
  }

  void build_mul() {
    _mul.assign(static_cast<std::size_t>(_n) * _n, 0);
    for (elem a = 0; a < _n; ++a) {
      for (elem b = 0; b < _n; ++b) {
        elem i = _oc[a];
        elem j = _oc[b];
        auto ij = lub(i, j);
        if (!ij || !_p.in_skeleton(*ij)) {
          throw ReconstructError("skeleton-join",
                                 "skeleton join missing or outside the skeleton");
        }
        elem a_topj = times_fiber_top(a, j);   // a * Ic(j)
        elem b_topi = times_fiber_top(b, i);   // b * Ic(i)
        auto icb = lub(b_topi, *ij);           // Ic(i) * b
        if (!icb) {
          throw ReconstructError("right-unit-product",
                                 "join with the skeleton bottom missing");
        }
        if (_oc[*icb] != *ij) {
          throw ReconstructError("right-unit-product",
                                 "join lands outside the join fiber");
        }
        auto prod = glb(a_topj, *icb);
        if (!prod) {
          throw ReconstructError("product-meet", "final meet missing");
        }
        _mul[static_cast<std::size_t>(a) * _n + b] = *prod;
      }
    }
  }

  DecoratedPoset const& _p;
  int _n;
  elem _zero = 0;
  elem _one = 0;
  std::vector<elem> _oc;
  std::vector<elem> _ic;
  std::vector<elem> _inv;
  std::vector<std::vector<elem>> _fiber;
  std::vector<elem> _mul;
};

}  // namespace

IMonoid reconstruct(DecoratedPoset const& dp) {
  return Rebuilder(dp).run();
}

// ---------------------------------------------------------------------
// Decorated poset isomorphism: refinement over (skeleton bit, up-set and
// down-set color profiles), then backtracking.
// ---------------------------------------------------------------------

namespace {

std::vector<int> poset_colors(DecoratedPoset const& p, bool use_decoration) {
  int n = p.n;
  std::vector<int> color(n);
  for (int x = 0; x < n; ++x) {
    color[x] = use_decoration && p.skel[x] ? 1 : 0;
  }
  for (int round = 0; round < n; ++round) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int x = 0; x < n; ++x) {
      std::vector<int> sig;
      sig.push_back(color[x]);
      std::vector<int> down, up;
      for (int y = 0; y < n; ++y) {
        if (p.leq[static_cast<std::size_t>(y) * n + x]) {
          down.push_back(color[y]);
        }
        if (p.leq[static_cast<std::size_t>(x) * n + y]) {
          up.push_back(color[y]);
        }
      }
      std::sort(down.begin(), down.end());
      std::sort(up.begin(), up.end());
      sig.push_back(static_cast<int>(down.size()));
      sig.insert(sig.end(), down.begin(), down.end());
      sig.push_back(-1);
      sig.insert(sig.end(), up.begin(), up.end());
      groups[std::move(sig)].push_back(x);
    }
    std::vector<int> next(n);
    int id = 0;
    for (auto const& [sig, members] : groups) {
      for (int x : members) {
        next[x] = id;
      }
      ++id;
    }
    bool stable = std::equal(color.begin(), color.end(), next.begin());
    color.swap(next);
    if (stable || id == n) {
      break;
    }
  }
  return color;
}

}  // namespace

bool poset_isomorphic(DecoratedPoset const& a, DecoratedPoset const& b,
                      bool use_decoration) {
  if (a.n != b.n) {
    return false;
  }
  int n = a.n;
  std::vector<int> ca = poset_colors(a, use_decoration);
  std::vector<int> cb = poset_colors(b, use_decoration);
  {
    std::vector<int> sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
      return false;
    }
  }
  std::vector<int> f(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> dfs = [&](int x) -> bool {
    if (x == n) {
      return true;
    }
    for (int y = 0; y < n; ++y) {
      if (used[y] || cb[y] != ca[x]) {
        continue;
      }
      if (use_decoration && (a.skel[x] != 0) != (b.skel[y] != 0)) {
        continue;
      }
      bool ok = true;
      for (int u = 0; u < x && ok; ++u) {
        bool ab1 = a.leq[static_cast<std::size_t>(u) * n + x] != 0;
        bool ab2 = b.leq[static_cast<std::size_t>(f[u]) * n + y] != 0;
        bool ba1 = a.leq[static_cast<std::size_t>(x) * n + u] != 0;
        bool ba2 = b.leq[static_cast<std::size_t>(y) * n + f[u]] != 0;
        ok = ab1 == ab2 && ba1 == ba2;
      }
      if (!ok) {
        continue;
      }
      f[x] = y;
      used[y] = true;
      if (dfs(x + 1)) {
        return true;
      }
      f[x] = -1;
      used[y] = false;
    }
    return false;
  };
  return dfs(0);
}

// ---------------------------------------------------------------------
// I[2] and the eps-collapse.
// ---------------------------------------------------------------------

BotSemilattice validate_semilattice(BotSemilattice s) {
  if (s.n < 1 || s.n > MAX_SIZE / 2
      || s.join.size() != static_cast<std::size_t>(s.n) * s.n
      || s.bottom >= s.n) {
    throw std::invalid_argument("malformed semilattice");
  }
  ValidationReport report;
  auto add = [&](std::string axiom, elem x, elem y, elem z, std::string msg) {
    report.violations.push_back({std::move(axiom), {x, y, z}, std::move(msg)});
  };
  for (elem v : s.join) {
    if (v >= s.n) {
      throw std::invalid_argument("semilattice join entry out of range");
    }
  }
  for (elem a = 0; a < s.n && report.ok(); ++a) {
    for (elem b = 0; b < s.n && report.ok(); ++b) {
      if (s.at(a, b) != s.at(b, a)) {
        add("commutativity", a, b, 0, "join not commutative");
      }
      for (elem c = 0; c < s.n; ++c) {
        if (s.at(s.at(a, b), c) != s.at(a, s.at(b, c))) {
          add("associativity", a, b, c, "join not associative");
          break;
        }
      }
    }
  }
  for (elem a = 0; a < s.n && report.ok(); ++a) {
    if (s.at(a, a) != a) {
      add("idempotency", a, 0, 0, "join not idempotent");
    }
    if (s.at(s.bottom, a) != a) {
      add("bottom", a, 0, 0, "bottom is not a unit for join");
    }
  }
  if (!report.ok()) {
    throw ValidationError(std::move(report));
  }
  return s;
}

IMonoid construct_I2(BotSemilattice const& sl) {
  BotSemilattice s = validate_semilattice(sl);
  int m = s.n;
  IMonoid a;
  a.n = 2 * m;
  a.unit = static_cast<elem>(2 * s.bottom + 1);
  a.inv.resize(a.n);
  a.mul.resize(static_cast<std::size_t>(a.n) * a.n);
  auto id = [&](int i, int x) { return static_cast<elem>(2 * i + x); };
  for (int i = 0; i < m; ++i) {
    a.inv[id(i, 0)] = id(i, 1);
    a.inv[id(i, 1)] = id(i, 0);
    for (int j = 0; j < m; ++j) {
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          int fiber = x == 0 ? i : s.at(static_cast<elem>(i), static_cast<elem>(j));
          a.mul[static_cast<std::size_t>(id(i, x)) * a.n + id(j, y)] =
              id(fiber, x & y);
        }
      }
    }
  }
  a.name = "I2(" + (s.name.empty() ? "sl" : s.name) + ")";
  a = validate(std::move(a));
  TheoryResult tr = satisfies_theory(a, TheorySpec::bundle("mccarthy"));
  if (!tr.ok) {
    throw InternalError("construct_I2: result fails " + tr.failed_key);
  }
  return a;
}

IMonoid construct_I2_eps(BotSemilattice const& sl) {
  BotSemilattice s = validate_semilattice(sl);
  BotSemilattice top;
  top.n = s.n + 1;
  top.bottom = s.bottom;
  top.name = s.name.empty() ? "sl+top" : s.name + "+top";
  elem t = static_cast<elem>(s.n);
  top.join.assign(static_cast<std::size_t>(top.n) * top.n, t);
  for (elem a = 0; a < s.n; ++a) {
    for (elem b = 0; b < s.n; ++b) {
      top.join[static_cast<std::size_t>(a) * top.n + b] = s.at(a, b);
    }
  }
  IMonoid big = construct_I2(top);
  // collapse the top fiber {0_top, 1_top} = {2t, 2t+1}
  std::vector<int> raw(big.n);
  for (int i = 0; i < big.n; ++i) {
    raw[i] = std::min(i, 2 * static_cast<int>(t));
  }
  Quotient q = quotient(big, Congruence::from_blocks(big.n, raw));
  q.algebra.name = "I2eps(" + (s.name.empty() ? "sl" : s.name) + ")";
  TheoryResult tr = satisfies_theory(q.algebra, TheorySpec::bundle("mccarthy"));
  if (!tr.ok) {
    throw InternalError("construct_I2_eps: result fails " + tr.failed_key);
  }
  return q.algebra;
}

std::vector<elem> collapse_to_M3(IMonoid const& alg) {
  require_mccarthy(alg, "collapse_to_M3");
  elem zero = alg.zero();
  std::vector<elem> bottom_fiber;
  for (elem x = 0; x < alg.n; ++x) {
    if (alg.at(x, zero) == zero) {
      bottom_fiber.push_back(x);
    }
  }
  if (alg.n > 1
      && (bottom_fiber.size() != 2 || zero == alg.unit)) {
    throw PreconditionError("collapse_to_M3: bottom fiber is not a copy of 2");
  }
  if (alg.n == 1) {
    throw PreconditionError("collapse_to_M3: bottom fiber is not a copy of 2");
  }
  IMonoid m3 = builtin("M3");
  std::vector<elem> f(alg.n);
  for (elem x = 0; x < alg.n; ++x) {
    if (x == zero) {
      f[x] = 0;
    } else if (x == alg.unit) {
      f[x] = 1;
    } else {
      f[x] = 2;  // eps
    }
  }
  for (elem x = 0; x < alg.n; ++x) {
    if (m3.inv_at(f[x]) != f[alg.inv_at(x)]) {
      throw InternalError("collapse_to_M3: involution not preserved");
    }
    for (elem y = 0; y < alg.n; ++y) {
      if (m3.at(f[x], f[y]) != f[alg.at(x, y)]) {
        throw InternalError("collapse_to_M3: multiplication not preserved");
      }
    }
  }
  return f;
}

std::vector<OrderScanHit> scan_order_conjecture(int max_n,
                                                EnumerateConfig const& config) {
  std::vector<OrderScanHit> hits;
  TheorySpec theory = TheorySpec::bundle("mccarthy");
  for (int n = 1; n <= max_n; ++n) {
    std::vector<IMonoid> models = enumerate_models(n, theory, config);
    std::vector<DecoratedPoset> posets;
    for (auto const& m : models) {
      posets.push_back(decorated_poset(m));
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
      for (std::size_t j = i + 1; j < models.size(); ++j) {
        if (poset_isomorphic(posets[i], posets[j], /*use_decoration=*/false)) {
          hits.push_back({n, models[i], models[j]});
        }
      }
    }
  }
  return hits;
}

}  // namespace imono
