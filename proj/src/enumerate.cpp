#include "imono/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace imono {

namespace {

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------
// Invariant partitioning. Iterated refinement of a per-element hash by
// (own hash, hash of the involute, sorted multiset of row/column
// behaviour). The hashes are pure functions of isomorphism-invariant data,
// so corresponding elements of isomorphic algebras hash identically.
// ---------------------------------------------------------------------

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h * 0x100000001b3ull;
}

std::vector<std::uint64_t> refine_hashes(IMonoid const& a) {
  int n = a.n;
  std::vector<std::uint64_t> h(n), next(n), row(n);
  for (elem x = 0; x < n; ++x) {
    h[x] = 0x243f6a8885a308d3ull + (x == a.unit ? 11 : 0)
           + (a.inv_at(x) == x ? 23 : 0) + (x == a.zero() ? 41 : 0);
  }
  auto distinct = [&](std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return std::unique(v.begin(), v.end()) - v.begin();
  };
  long prev = distinct(h);
  for (int round = 0; round < n; ++round) {
    for (elem x = 0; x < n; ++x) {
      for (elem y = 0; y < n; ++y) {
        row[y] = mix(mix(h[y], h[a.at(x, y)]), h[a.at(y, x)]);
      }
      std::sort(row.begin(), row.end());
      std::uint64_t s = mix(h[x], h[a.inv_at(x)]);
      for (std::uint64_t v : row) {
        s = mix(s, v);
      }
      next[x] = s;
    }
    h.swap(next);
    long now = distinct(h);
    if (now == prev || now == n) {
      break;
    }
    prev = now;
  }
  return h;
}

std::uint64_t fingerprint(IMonoid const& a) {
  std::vector<std::uint64_t> h = refine_hashes(a);
  std::sort(h.begin(), h.end());
  std::uint64_t out = mix(1469598103934665603ull, a.n);
  for (std::uint64_t v : h) {
    out = mix(out, v);
  }
  return out;
}

}  // namespace

IsoResult find_isomorphism(IMonoid const& a, IMonoid const& b) {
  if (a.n != b.n || (a.inv_at(a.unit) == a.unit) != (b.inv_at(b.unit) == b.unit)) {
    return {};
  }
  int n = a.n;
  std::vector<std::uint64_t> ca = refine_hashes(a);
  std::vector<std::uint64_t> cb = refine_hashes(b);
  {
    std::vector<std::uint64_t> sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
      return {};
    }
  }

  // Map elements of a in order of ascending color-class size; smaller
  // classes have fewer candidates.
  auto class_size = [&](elem x) {
    return std::count(ca.begin(), ca.end(), ca[x]);
  };
  std::vector<elem> order(n);
  for (int i = 0; i < n; ++i) {
    order[i] = static_cast<elem>(i);
  }
  std::sort(order.begin(), order.end(), [&](elem x, elem y) {
    auto kx = std::tuple(x != a.unit, class_size(x), ca[x], x);
    auto ky = std::tuple(y != a.unit, class_size(y), ca[y], y);
    return kx < ky;
  });

  std::vector<elem> f(n, UNDEF);
  std::vector<bool> used(n, false);

  // Checks every constraint among currently mapped elements that involves x.
  auto consistent = [&](elem x) {
    elem y = f[x];
    if (ca[x] != cb[y]) {
      return false;
    }
    if (f[a.inv_at(x)] != UNDEF && f[a.inv_at(x)] != b.inv_at(y)) {
      return false;
    }
    for (elem u = 0; u < n; ++u) {
      if (f[u] == UNDEF) {
        continue;
      }
      elem p = a.at(x, u);
      if (f[p] != UNDEF && f[p] != b.at(y, f[u])) {
        return false;
      }
      elem q = a.at(u, x);
      if (f[q] != UNDEF && f[q] != b.at(f[u], y)) {
        return false;
      }
      // x may appear as a product of mapped elements
      for (elem v = 0; v < n; ++v) {
        if (f[v] != UNDEF && a.at(u, v) == x && b.at(f[u], f[v]) != y) {
          return false;
        }
      }
    }
    return true;
  };

  std::vector<std::pair<elem, elem>> assigned;

  auto push = [&](elem x, elem y) -> bool {
    f[x] = y;
    used[y] = true;
    assigned.emplace_back(x, y);
    return consistent(x);
  };

  auto undo_to = [&](std::size_t mark) {
    while (assigned.size() > mark) {
      auto [x, y] = assigned.back();
      assigned.pop_back();
      f[x] = UNDEF;
      used[y] = false;
    }
  };

  std::function<bool(int)> dfs = [&](int pos) -> bool {
    while (pos < n && f[order[pos]] != UNDEF) {
      ++pos;
    }
    if (pos == n) {
      return true;
    }
    elem x = order[pos];
    for (elem y = 0; y < n; ++y) {
      if (used[y] || cb[y] != ca[x]) {
        continue;
      }
      std::size_t mark = assigned.size();
      bool ok = push(x, y);
      elem xi = a.inv_at(x);
      if (ok && f[xi] == UNDEF) {
        if (used[b.inv_at(y)]) {
          ok = false;
        } else {
          ok = push(xi, b.inv_at(y));
        }
      }
      if (ok && dfs(pos + 1)) {
        return true;
      }
      undo_to(mark);
    }
    return false;
  };

  if (!push(a.unit, b.unit)) {
    return {};
  }
  elem zi = a.inv_at(a.unit);
  if (f[zi] == UNDEF && !push(zi, b.inv_at(b.unit))) {
    return {};
  }
  if (!dfs(0)) {
    return {};
  }
  return {true, f};
}

// ---------------------------------------------------------------------
// Canonical form. The byte string is [n, inv', mul' row-major] minimized
// over relabelings with unit at 0. Since the inv section precedes the mul
// section, the minimal inv table is forced by the involution's cycle type
// alone: fixed points first, then the 2-cycles as adjacent swapped pairs
// (with 0 <-> 1 first when the unit is not fixed). The search therefore
// pins the inv layout and branches only over which element realizes each
// slot, bounding partial mul tables against the best complete one.
// ---------------------------------------------------------------------

namespace {

struct CanonSlots {
  // slot kinds per position: 0 = fixed point, 1 = pair-first (partner takes
  // the next position), 2 = pair-second (skipped during search)
  std::vector<int> kind;
  std::vector<elem> inv_pattern;
};

CanonSlots canon_slots(IMonoid const& a) {
  int n = a.n;
  int pairs = 0;
  for (elem x = 0; x < n; ++x) {
    if (a.inv_at(x) != x) {
      ++pairs;
    }
  }
  pairs /= 2;
  bool unit_fixed = a.inv_at(a.unit) == a.unit;
  CanonSlots s;
  s.kind.assign(n, 0);
  s.inv_pattern.assign(n, 0);
  int fixed = n - 2 * pairs;
  int pos = 0;
  if (!unit_fixed) {
    s.kind[0] = 1;
    s.kind[1] = 2;
    s.inv_pattern[0] = 1;
    s.inv_pattern[1] = 0;
    pos = 2;
    --pairs;
  }
  for (int i = 0; i < fixed; ++i, ++pos) {
    s.kind[pos] = 0;
    s.inv_pattern[pos] = static_cast<elem>(pos);
  }
  for (int i = 0; i < pairs; ++i, pos += 2) {
    s.kind[pos] = 1;
    s.kind[pos + 1] = 2;
    s.inv_pattern[pos] = static_cast<elem>(pos + 1);
    s.inv_pattern[pos + 1] = static_cast<elem>(pos);
  }
  return s;
}

std::vector<std::uint8_t> bytes_for(IMonoid const& a,
                                    std::vector<elem> const& seq) {
  // seq[i] = original element receiving label i
  int n = a.n;
  std::vector<elem> label(n);
  for (int i = 0; i < n; ++i) {
    label[seq[i]] = static_cast<elem>(i);
  }
  std::vector<std::uint8_t> bytes;
  bytes.reserve(1 + n + n * n);
  bytes.push_back(static_cast<std::uint8_t>(n));
  for (int i = 0; i < n; ++i) {
    bytes.push_back(label[a.inv_at(seq[i])]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bytes.push_back(label[a.at(seq[i], seq[j])]);
    }
  }
  return bytes;
}

class CanonSearch {
 public:
  explicit CanonSearch(IMonoid const& a)
      : _a(a), _n(a.n), _slots(canon_slots(a)), _color(refine_hashes(a)),
        _label(a.n, UNDEF) {}

  std::pair<std::vector<std::uint8_t>, std::vector<elem>> run() {
    // Greedy seed: unit first, rest ordered by (slot compatibility handled
    // during DFS) color then index. The DFS below replaces it immediately if
    // anything smaller exists, but a nonempty incumbent enables pruning.
    _seq.clear();
    dfs(0);
    if (_best.empty()) {
      throw InternalError("canonical labeling search found no labeling");
    }
    return {_best, _best_seq};
  }

 private:
  void place(elem e, int pos) {
    _seq.push_back(e);
    _label[e] = static_cast<elem>(pos);
  }

  void unplace() {
    _label[_seq.back()] = UNDEF;
    _seq.pop_back();
  }

  // -1: strictly smaller than best so far, 0: undecided, 1: provably larger.
  int compare_partial() const {
    if (_best.empty()) {
      return 0;
    }
    int k = static_cast<int>(_seq.size());
    std::size_t pos = 1 + _n;  // inv section equals the pinned pattern
    for (int i = 0; i < _n; ++i) {
      for (int j = 0; j < _n; ++j, ++pos) {
        int val = -1;
        int lower = 0;
        if (i == 0) {
          val = j;
        } else if (j == 0) {
          val = i;
        } else if (i == j) {
          val = i;
        } else if (i < k && j < k) {
          elem p = _a.at(_seq[i], _seq[j]);
          if (_label[p] != UNDEF) {
            val = _label[p];
          } else {
            lower = k;
          }
        } else {
          return 0;
        }
        int b = _best[pos];
        if (val >= 0) {
          if (val < b) {
            return -1;
          }
          if (val > b) {
            return 1;
          }
        } else {
          if (lower > b) {
            return 1;
          }
          return 0;
        }
      }
    }
    return 0;
  }

  void dfs(int pos) {
    if (pos == _n) {
      auto bytes = bytes_for(_a, _seq);
      if (_best.empty() || bytes < _best) {
        _best = std::move(bytes);
        _best_seq = _seq;
      }
      return;
    }
    if (_slots.kind[pos] == 2) {
      throw InternalError("canonical labeling slot bookkeeping broke");
    }
    std::vector<elem> candidates;
    for (elem e = 0; e < _n; ++e) {
      if (_label[e] != UNDEF) {
        continue;
      }
      if (pos == 0 && e != _a.unit) {
        continue;
      }
      if (pos > 0 && (e == _a.unit)) {
        continue;
      }
      bool is_fixed = _a.inv_at(e) == e;
      if ((_slots.kind[pos] == 0) != is_fixed) {
        continue;
      }
      candidates.push_back(e);
    }
    std::sort(candidates.begin(), candidates.end(), [&](elem x, elem y) {
      return std::pair(_color[x], x) < std::pair(_color[y], y);
    });
    for (elem e : candidates) {
      place(e, pos);
      int next = pos + 1;
      bool paired = _slots.kind[pos] == 1;
      if (paired) {
        place(_a.inv_at(e), pos + 1);
        next = pos + 2;
      }
      if (compare_partial() <= 0) {
        dfs(next);
      }
      if (paired) {
        unplace();
      }
      unplace();
    }
  }

  IMonoid const& _a;
  int _n;
  CanonSlots _slots;
  std::vector<std::uint64_t> _color;
  std::vector<elem> _label;
  std::vector<elem> _seq;
  std::vector<std::uint8_t> _best;
  std::vector<elem> _best_seq;
};

}  // namespace

CanonicalForm canonical_form(IMonoid const& a) {
  return {CanonSearch(a).run().first};
}

IMonoid canonical_relabel(IMonoid const& a) {
  auto [bytes, seq] = CanonSearch(a).run();
  int n = a.n;
  IMonoid out;
  out.n = n;
  out.unit = 0;
  out.name = a.name;
  out.inv.assign(bytes.begin() + 1, bytes.begin() + 1 + n);
  out.mul.assign(bytes.begin() + 1 + n, bytes.end());
  return out;
}

// ---------------------------------------------------------------------
// Model search.
// ---------------------------------------------------------------------

namespace {

// Flat postfix programs; partial evaluation walks an array instead of a
// pointer tree. For each op we precompute whether everything after it is an
// Inv chain (then a blocked cell at that op is the whole remaining
// computation, so its value can be forced from the other side).
struct Code {
  enum Kind : std::uint8_t { PushVar, Push0, Push1, OpMul, OpJoin, OpInv };

  struct Op {
    Kind kind;
    std::uint8_t arg;
  };

  std::vector<Op> ops;
  std::vector<std::int8_t> tail_inv;  // -1: not tail; else #Inv after, mod 2

  static void emit(Term const& t, std::vector<Op>& out) {
    switch (t.kind()) {
      case Term::Kind::Var:
        out.push_back({PushVar, static_cast<std::uint8_t>(t.var_index())});
        break;
      case Term::Kind::Const0:
        out.push_back({Push0, 0});
        break;
      case Term::Kind::Const1:
        out.push_back({Push1, 0});
        break;
      case Term::Kind::Inv:
        emit(t.arg(), out);
        out.push_back({OpInv, 0});
        break;
      case Term::Kind::Mul:
        emit(t.left(), out);
        emit(t.right(), out);
        out.push_back({OpMul, 0});
        break;
      case Term::Kind::Join:
        emit(t.left(), out);
        emit(t.right(), out);
        out.push_back({OpJoin, 0});
        break;
    }
  }

  static Code compile(Term const& t) {
    Code c;
    emit(t, c.ops);
    int depth = 0;
    int peak = 0;
    for (auto const& op : c.ops) {
      if (op.kind == PushVar || op.kind == Push0 || op.kind == Push1) {
        peak = std::max(peak, ++depth);
      } else if (op.kind == OpMul || op.kind == OpJoin) {
        --depth;
      }
    }
    if (peak > 32) {
      throw std::invalid_argument("theory identity too deeply nested");
    }
    c.tail_inv.assign(c.ops.size(), -1);
    int invs = 0;
    for (int i = static_cast<int>(c.ops.size()) - 1; i >= 0; --i) {
      c.tail_inv[i] = static_cast<std::int8_t>(invs & 1);
      if (c.ops[i].kind == OpInv) {
        ++invs;
      } else {
        break;  // an earlier block is below a binary op, not forceable
      }
    }
    // tail_inv[i] is only meaningful for the ops on the final Inv chain; mark
    // everything before it as non-tail.
    int first_tail = static_cast<int>(c.ops.size()) - 1 - invs;
    for (int i = 0; i < first_tail; ++i) {
      c.tail_inv[i] = -1;
    }
    return c;
  }
};

// One ground instantiation of a theory identity, watched on the blocked
// cells of both sides.
struct Instance {
  Code const* lhs;
  Code const* rhs;
  std::array<elem, 3> asg{};
  int park1 = -2;
  int park2 = -2;
};

struct PartialValue {
  bool known = false;
  elem val = 0;
  int cell = -1;      // blocking cell when !known
  bool tail = false;  // cell feeds the root through Inv nodes only
  int inv_depth = 0;
};

struct CompiledLaw {
  Code lhs;
  Code rhs;
  int var_count;
};

class Searcher {
 public:
  Searcher(int n, std::vector<elem> inv, std::vector<CompiledLaw> const& laws,
           bool reduction, Clock::time_point deadline, std::atomic<bool>* stop)
      : _n(n), _inv(std::move(inv)), _laws(laws), _reduction(reduction),
        _deadline(deadline), _stop(stop) {
    _zero = _inv[0];
    _tab.assign(static_cast<std::size_t>(n) * n, UNDEF);
    _touch.assign(n, 0);
    _watch.assign(_tab.size(), {});
    for (elem x = 0; x < n; ++x) {
      _tab[x] = x;                                      // unit row
      _tab[static_cast<std::size_t>(x) * n] = x;        // unit column
      _tab[static_cast<std::size_t>(x) * n + x] = x;    // diagonal
    }
    // Concentric cell order: finish the k x k corner before touching element
    // k+1. Constraints among low elements then resolve before fresh ones are
    // introduced, which is where the symmetry reduction gets its leverage.
    for (int m = 1; m < n; ++m) {
      for (int a = 1; a < m; ++a) {
        _cell_order.push_back(a * n + m);
        _cell_order.push_back(m * n + a);
      }
    }
  }

  // Builds all ground instances and runs root propagation. False when the
  // involution shape already contradicts the theory.
  bool initialize() {
    for (auto const& law : _laws) {
      long long count = 1;
      for (int i = 0; i < law.var_count; ++i) {
        count *= _n;
      }
      for (long long m = 0; m < count; ++m) {
        Instance inst;
        inst.lhs = &law.lhs;
        inst.rhs = &law.rhs;
        long long rest = m;
        for (int i = 0; i < law.var_count; ++i) {
          inst.asg[i] = static_cast<elem>(rest % _n);
          rest /= _n;
        }
        _instances.push_back(inst);
      }
    }
    for (std::size_t i = 0; i < _instances.size(); ++i) {
      if (!re_eval(static_cast<int>(i))) {
        return false;
      }
    }
    return drain();
  }

  int first_undef(int from = 0) const {
    for (std::size_t k = from; k < _cell_order.size(); ++k) {
      if (_tab[_cell_order[k]] == UNDEF) {
        return static_cast<int>(k);
      }
    }
    return -1;
  }

  int cell_at(int order_pos) const {
    return _cell_order[order_pos];
  }

  std::vector<elem> candidates(int cell) const {
    std::vector<elem> out;
    if (!_reduction) {
      for (elem v = 0; v < _n; ++v) {
        out.push_back(v);
      }
      return out;
    }
    elem a = static_cast<elem>(cell / _n);
    elem b = static_cast<elem>(cell % _n);
    std::vector<bool> pinned(_n, false);
    pinned[0] = true;
    pinned[a] = true;
    pinned[b] = true;
    for (elem e = 0; e < _n; ++e) {
      if (_touch[e] > 0) {
        pinned[e] = true;
      }
    }
    // Untouched elements fall into interchangeability classes: fixed points
    // of ', and 2-cycles with both ends untouched. One representative per
    // class suffices; an untouched element whose partner is pinned is a
    // class of its own.
    elem first_fixed = UNDEF;
    elem first_pair = UNDEF;
    for (elem e = 0; e < _n; ++e) {
      if (pinned[e]) {
        out.push_back(e);
      } else if (_inv[e] == e) {
        if (first_fixed == UNDEF) {
          first_fixed = e;
        }
      } else if (pinned[_inv[e]]) {
        out.push_back(e);
      } else if (first_pair == UNDEF) {
        first_pair = e;
      }
    }
    if (first_fixed != UNDEF) {
      out.push_back(first_fixed);
    }
    if (first_pair != UNDEF) {
      out.push_back(first_pair);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  long long nodes() const {
    return _nodes;
  }

  // Depth-first completion of the table from the current state; emits every
  // model that survives the final full check.
  void search(std::vector<IMonoid>& out, int from = 0) {
    if (++_nodes % 8192 == 0) {
      if (_stop->load(std::memory_order_relaxed)
          || Clock::now() > _deadline) {
        _stop->store(true, std::memory_order_relaxed);
        throw BudgetError("enumeration time budget exceeded");
      }
    }
    int pos = first_undef(from);
    if (pos < 0) {
      if (final_check()) {
        IMonoid m;
        m.n = _n;
        m.unit = 0;
        m.inv = _inv;
        m.mul = _tab;
        out.push_back(std::move(m));
      }
      return;
    }
    int cell = _cell_order[pos];
    for (elem v : candidates(cell)) {
      std::size_t tmark = _trail.size();
      std::size_t wmark = _watch_trail.size();
      elem a = static_cast<elem>(cell / _n);
      elem b = static_cast<elem>(cell % _n);
      ++_touch[a];
      ++_touch[b];
      ++_touch[v];
      _pending.clear();
      _pending.emplace_back(cell, v);
      if (drain()) {
        search(out, pos + 1);
      }
      undo(tmark, wmark);
      --_touch[a];
      --_touch[b];
      --_touch[v];
    }
  }

  // Assigns one decided cell (used to split the root into parallel tasks).
  bool decide(int cell, elem v) {
    elem a = static_cast<elem>(cell / _n);
    elem b = static_cast<elem>(cell % _n);
    ++_touch[a];
    ++_touch[b];
    ++_touch[v];
    _pending.clear();
    _pending.emplace_back(cell, v);
    return drain();
  }

 private:
  elem tab(elem a, elem b) const {
    return _tab[static_cast<std::size_t>(a) * _n + b];
  }

  bool unify(int c1, int c2) {
    elem v1 = _tab[c1];
    elem v2 = _tab[c2];
    if (v1 != UNDEF && v2 != UNDEF) {
      return v1 == v2;
    }
    if (v1 != UNDEF) {
      _pending.emplace_back(c2, v1);
    } else if (v2 != UNDEF) {
      _pending.emplace_back(c1, v2);
    }
    // both undefined: the triple is re-derived when either output cell is
    // assigned (scans 3/4)
    return true;
  }

  bool unify_val(int c, elem v) {
    if (_tab[c] != UNDEF) {
      return _tab[c] == v;
    }
    _pending.emplace_back(c, v);
    return true;
  }

  bool drain() {
    while (!_pending.empty()) {
      auto [cell, v] = _pending.back();
      _pending.pop_back();
      elem cur = _tab[cell];
      if (cur == v) {
        continue;
      }
      if (cur != UNDEF) {
        return false;
      }
      _tab[cell] = v;
      _trail.push_back(cell);
      elem a = static_cast<elem>(cell / _n);
      elem b = static_cast<elem>(cell % _n);
      // associativity closure around the new cell
      for (elem d = 0; d < _n; ++d) {
        elem e = tab(b, d);  // (a*b)*d = a*(b*d)
        if (e != UNDEF && !unify(static_cast<int>(a) * _n + e,
                                 static_cast<int>(v) * _n + d)) {
          return false;
        }
        elem g = tab(d, a);  // d*(a*b) = (d*a)*b
        if (g != UNDEF && !unify(static_cast<int>(d) * _n + v,
                                 static_cast<int>(g) * _n + b)) {
          return false;
        }
      }
      // the new cell as an inner product: (x*y)*b with x*y = a, and
      // (a*y)*z with y*z = b
      for (elem x = 0; x < _n; ++x) {
        for (elem y = 0; y < _n; ++y) {
          if (tab(x, y) == a) {
            elem q = tab(y, b);
            if (q != UNDEF
                && !unify_val(static_cast<int>(x) * _n + q, v)) {
              return false;
            }
          }
          if (tab(x, y) == b) {
            elem p = tab(a, x);
            if (p != UNDEF
                && !unify_val(static_cast<int>(p) * _n + y, v)) {
              return false;
            }
          }
        }
      }
      // wake watched identity instances
      std::vector<int>& watchers = _watch[cell];
      for (std::size_t w = 0; w < watchers.size();) {
        int i = watchers[w];
        if (_instances[i].park1 != cell && _instances[i].park2 != cell) {
          watchers[w] = watchers.back();  // stale
          watchers.pop_back();
          continue;
        }
        ++w;
        if (!re_eval(i)) {
          return false;
        }
      }
    }
    return true;
  }

  PartialValue run_partial(Code const& code, elem const* asg) const {
    elem stack[32];
    int sp = 0;
    for (std::size_t i = 0; i < code.ops.size(); ++i) {
      auto const& op = code.ops[i];
      switch (op.kind) {
        case Code::PushVar:
          stack[sp++] = asg[op.arg];
          break;
        case Code::Push0:
          stack[sp++] = _zero;
          break;
        case Code::Push1:
          stack[sp++] = 0;
          break;
        case Code::OpInv:
          stack[sp - 1] = _inv[stack[sp - 1]];
          break;
        case Code::OpMul: {
          --sp;
          int cell = static_cast<int>(stack[sp - 1]) * _n + stack[sp];
          elem v = _tab[cell];
          if (v == UNDEF) {
            return {false, 0, cell, code.tail_inv[i] >= 0,
                    code.tail_inv[i] >= 0 ? code.tail_inv[i] : 0};
          }
          stack[sp - 1] = v;
          break;
        }
        case Code::OpJoin: {
          --sp;
          int cell = static_cast<int>(_inv[stack[sp - 1]]) * _n + _inv[stack[sp]];
          elem v = _tab[cell];
          if (v == UNDEF) {
            return {false, 0, cell, code.tail_inv[i] >= 0,
                    code.tail_inv[i] >= 0 ? code.tail_inv[i] + 1 : 0};
          }
          stack[sp - 1] = _inv[v];
          break;
        }
      }
    }
    return {true, stack[0], -1, false, 0};
  }

  void park(int i, int c1, int c2) {
    Instance& inst = _instances[i];
    _watch_trail.push_back({i, inst.park1, inst.park2});
    inst.park1 = c1;
    inst.park2 = c2;
    if (c1 >= 0) {
      _watch[c1].push_back(i);
    }
    if (c2 >= 0 && c2 != c1) {
      _watch[c2].push_back(i);
    }
  }

  bool re_eval(int i) {
    Instance& inst = _instances[i];
    PartialValue l = run_partial(*inst.lhs, inst.asg.data());
    PartialValue r = run_partial(*inst.rhs, inst.asg.data());
    if (l.known && r.known) {
      if (l.val != r.val) {
        return false;
      }
      park(i, -1, -1);
      return true;
    }
    if (l.known != r.known) {
      PartialValue const& blocked = l.known ? r : l;
      elem v = l.known ? l.val : r.val;
      park(i, blocked.cell, -1);
      if (blocked.tail) {
        // the undecided cell is the whole remaining computation: force it
        elem forced = (blocked.inv_depth & 1) ? _inv[v] : v;
        _pending.emplace_back(blocked.cell, forced);
      }
      return true;
    }
    park(i, l.cell, r.cell);
    return true;
  }

  void undo(std::size_t tmark, std::size_t wmark) {
    while (_trail.size() > tmark) {
      _tab[_trail.back()] = UNDEF;
      _trail.pop_back();
    }
    while (_watch_trail.size() > wmark) {
      auto [i, old1, old2] = _watch_trail.back();
      _watch_trail.pop_back();
      Instance& inst = _instances[i];
      inst.park1 = old1;
      inst.park2 = old2;
      if (old1 >= 0) {
        _watch[old1].push_back(i);
      }
      if (old2 >= 0 && old2 != old1) {
        _watch[old2].push_back(i);
      }
    }
  }

  bool final_check() const {
    for (elem x = 0; x < _n; ++x) {
      for (elem y = 0; y < _n; ++y) {
        for (elem z = 0; z < _n; ++z) {
          if (tab(tab(x, y), z) != tab(x, tab(y, z))) {
            return false;
          }
        }
      }
    }
    for (auto const& inst : _instances) {
      PartialValue l = run_partial(*inst.lhs, inst.asg.data());
      PartialValue r = run_partial(*inst.rhs, inst.asg.data());
      if (!l.known || !r.known || l.val != r.val) {
        return false;
      }
    }
    return true;
  }

  struct ParkRecord {
    int instance;
    int park1;
    int park2;
  };

  int _n;
  std::vector<elem> _inv;
  elem _zero;
  std::vector<CompiledLaw> const& _laws;
  bool _reduction;
  Clock::time_point _deadline;
  std::atomic<bool>* _stop;

  std::vector<elem> _tab;
  std::vector<int> _cell_order;
  std::vector<int> _trail;
  std::vector<int> _touch;
  std::vector<Instance> _instances;
  std::vector<std::vector<int>> _watch;
  std::vector<ParkRecord> _watch_trail;
  std::vector<std::pair<int, elem>> _pending;
  long long _nodes = 0;
};

// All involution tables on {0..n-1} up to conjugation by permutations fixing
// 0: either 0 is fixed or swapped with 1, fixed points first, 2-cycles as
// trailing adjacent pairs.
std::vector<std::vector<elem>> involution_shapes(int n) {
  std::vector<std::vector<elem>> shapes;
  for (int pairs = 0; 2 * pairs <= n - 1; ++pairs) {
    std::vector<elem> inv(n);
    int fixed = n - 2 * pairs;
    for (int i = 0; i < fixed; ++i) {
      inv[i] = static_cast<elem>(i);
    }
    for (int t = 0; t < pairs; ++t) {
      inv[fixed + 2 * t] = static_cast<elem>(fixed + 2 * t + 1);
      inv[fixed + 2 * t + 1] = static_cast<elem>(fixed + 2 * t);
    }
    shapes.push_back(std::move(inv));
  }
  for (int pairs = 0; n >= 2 && 2 * pairs <= n - 2; ++pairs) {
    std::vector<elem> inv(n);
    inv[0] = 1;
    inv[1] = 0;
    int fixed = n - 2 - 2 * pairs;
    for (int i = 0; i < fixed; ++i) {
      inv[2 + i] = static_cast<elem>(2 + i);
    }
    for (int t = 0; t < pairs; ++t) {
      inv[2 + fixed + 2 * t] = static_cast<elem>(2 + fixed + 2 * t + 1);
      inv[2 + fixed + 2 * t + 1] = static_cast<elem>(2 + fixed + 2 * t);
    }
    shapes.push_back(std::move(inv));
  }
  return shapes;
}

// Keeps one representative per isomorphism class, bucketed by an invariant
// fingerprint.
class ClassSet {
 public:
  bool add(IMonoid model) {
    std::uint64_t fp = fingerprint(model);
    auto& bucket = _buckets[fp];
    for (int idx : bucket) {
      if (find_isomorphism(_reps[idx], model).isomorphic) {
        return false;
      }
    }
    bucket.push_back(static_cast<int>(_reps.size()));
    _reps.push_back(std::move(model));
    return true;
  }

  std::vector<IMonoid>& reps() {
    return _reps;
  }

 private:
  std::vector<IMonoid> _reps;
  std::unordered_map<std::uint64_t, std::vector<int>> _buckets;
};

std::string sanitize_label(std::string const& label) {
  std::string out;
  for (char c : label) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '-';
  }
  return out.empty() ? "theory" : out;
}

}  // namespace

std::vector<IMonoid> enumerate_models(int n, TheorySpec const& theory,
                                      EnumerateConfig const& config) {
  if (n < 1 || n > MAX_SIZE) {
    throw std::invalid_argument("enumerate_models: size out of range");
  }
  if (!theory.identity_only()) {
    throw std::invalid_argument(
        "enumerate_models: theory must be identity-only (no quasi-identities)");
  }
  std::vector<CompiledLaw> laws;
  for (auto const* e : theory.resolve()) {
    Identity const& id = e->identity();
    if (id.var_count > 3) {
      throw std::invalid_argument(
          "enumerate_models: identities with more than 3 variables unsupported");
    }
    laws.push_back({Code::compile(id.lhs), Code::compile(id.rhs),
                    id.var_count});
  }
  auto deadline = Clock::now()
                  + std::chrono::duration_cast<Clock::duration>(
                      std::chrono::duration<double>(config.budget_seconds));
  std::atomic<bool> stop{false};

  struct Task {
    int shape;
    int cell;   // -1: shape needs no branching
    elem value;
  };
  std::vector<std::vector<elem>> shapes = involution_shapes(n);
  std::vector<Task> tasks;
  std::vector<ClassSet> shape_results(shapes.size());

  for (std::size_t s = 0; s < shapes.size(); ++s) {
    Searcher root(n, shapes[s], laws, config.symmetry_reduction, deadline,
                  &stop);
    if (!root.initialize()) {
      continue;
    }
    int cell = root.first_undef();
    if (cell < 0) {
      std::vector<IMonoid> found;
      root.search(found);
      for (auto& m : found) {
        shape_results[s].add(std::move(m));
      }
      continue;
    }
    for (elem v : root.candidates(cell)) {
      tasks.push_back({static_cast<int>(s), cell, v});
    }
  }

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));

  std::vector<std::vector<std::vector<IMonoid>>> task_models(tasks.size());
  std::exception_ptr error;
  std::mutex error_mutex;
  std::atomic<std::size_t> next_task{0};

  auto worker = [&] {
    try {
      while (true) {
        std::size_t t = next_task.fetch_add(1);
        if (t >= tasks.size() || stop.load(std::memory_order_relaxed)) {
          return;
        }
        Task const& task = tasks[t];
        Searcher s(n, shapes[task.shape], laws, config.symmetry_reduction,
                   deadline, &stop);
        if (!s.initialize()) {
          throw InternalError("task root re-initialization diverged");
        }
        std::vector<IMonoid> found;
        if (s.decide(task.cell, task.value)) {
          s.search(found);
        }
        if (std::getenv("IMONO_PROF") != nullptr) {
          std::fprintf(stderr, "task %zu shape=%d cell=%d v=%d nodes=%lld found=%zu\n",
                       t, task.shape, task.cell, int(task.value), s.nodes(),
                       found.size());
        }
        // local dedup keeps per-task memory bounded
        ClassSet local;
        for (auto& m : found) {
          local.add(std::move(m));
        }
        task_models[t].push_back(std::move(local.reps()));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) {
        error = std::current_exception();
      }
      stop.store(true, std::memory_order_relaxed);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  if (stop.load()) {
    throw BudgetError("enumeration time budget exceeded");
  }

  ClassSet all;
  for (auto& cs : shape_results) {
    for (auto& m : cs.reps()) {
      all.add(std::move(m));
    }
  }
  for (auto& per_task : task_models) {
    for (auto& models : per_task) {
      for (auto& m : models) {
        all.add(std::move(m));
      }
    }
  }

  std::vector<std::pair<CanonicalForm, IMonoid>> canon;
  for (auto& m : all.reps()) {
    IMonoid c = canonical_relabel(m);
    canon.emplace_back(canonical_form(c), std::move(c));
  }
  std::sort(canon.begin(), canon.end(),
            [](auto const& x, auto const& y) { return x.first < y.first; });
  std::vector<IMonoid> out;
  std::string label = sanitize_label(theory.label);
  for (std::size_t i = 0; i < canon.size(); ++i) {
    canon[i].second.name =
        label + "_" + std::to_string(n) + "_" + std::to_string(i);
    out.push_back(std::move(canon[i].second));
  }
  return out;
}

SpectrumResult fine_spectrum(int max_n, TheorySpec const& theory,
                             EnumerateConfig const& config) {
  SpectrumResult result;
  for (int n = 1; n <= max_n; ++n) {
    auto start = Clock::now();
    try {
      auto models = enumerate_models(n, theory, config);
      double secs = std::chrono::duration<double>(Clock::now() - start).count();
      result.rows.push_back({n, static_cast<long long>(models.size()), secs});
    } catch (BudgetError const&) {
      result.complete = false;
      return result;
    }
  }
  return result;
}

long long count_subclassical(int n, EnumerateConfig const& config) {
  auto models = enumerate_models(n, TheorySpec::bundle("uband"), config);
  long long count = 0;
  for (auto const& m : models) {
    if (m.inv_at(m.unit) != m.unit) {
      ++count;
    }
  }
  return count;
}

}  // namespace imono
