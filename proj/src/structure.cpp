#include "imono/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "imono/catalog.hpp"

namespace imono {

namespace {

std::vector<int> normalize(std::vector<int> const& raw) {
  std::map<int, int> remap;
  std::vector<int> out(raw.size());
  int next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [it, fresh] = remap.emplace(raw[i], next);
    if (fresh) {
      ++next;
    }
    out[i] = it->second;
  }
  return out;
}

}  // namespace

Congruence Congruence::identity(int n) {
  Congruence c;
  c.n = n;
  c.block.resize(n);
  std::iota(c.block.begin(), c.block.end(), 0);
  return c;
}

Congruence Congruence::all(int n) {
  Congruence c;
  c.n = n;
  c.block.assign(n, 0);
  return c;
}

Congruence Congruence::from_blocks(int n, std::vector<int> raw) {
  if (static_cast<int>(raw.size()) != n) {
    throw std::invalid_argument("block vector length mismatch");
  }
  Congruence c;
  c.n = n;
  c.block = normalize(raw);
  return c;
}

int Congruence::num_blocks() const {
  return block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
}

bool Congruence::leq(Congruence const& other) const {
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (block[a] == block[b] && other.block[a] != other.block[b]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::vector<elem>> Congruence::blocks() const {
  std::vector<std::vector<elem>> out(num_blocks());
  for (int i = 0; i < n; ++i) {
    out[block[i]].push_back(static_cast<elem>(i));
  }
  return out;
}

std::string Congruence::to_string() const {
  std::ostringstream os;
  auto bs = blocks();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    os << (i ? " " : "") << "{";
    for (std::size_t j = 0; j < bs[i].size(); ++j) {
      os << (j ? "," : "") << static_cast<int>(bs[i][j]);
    }
    os << "}";
  }
  return os.str();
}

bool compatible(IMonoid const& alg, Congruence const& c) {
  if (c.n != alg.n) {
    return false;
  }
  for (elem a = 0; a < alg.n; ++a) {
    for (elem b = 0; b < alg.n; ++b) {
      if (!c.same(a, b)) {
        continue;
      }
      if (!c.same(alg.inv_at(a), alg.inv_at(b))) {
        return false;
      }
      for (elem x = 0; x < alg.n; ++x) {
        if (!c.same(alg.at(a, x), alg.at(b, x))
            || !c.same(alg.at(x, a), alg.at(x, b))) {
          return false;
        }
      }
    }
  }
  return true;
}

Congruence cong_meet(Congruence const& a, Congruence const& b) {
  std::vector<int> raw(a.n);
  for (int i = 0; i < a.n; ++i) {
    raw[i] = a.block[i] * (b.n + 1) + b.block[i];
  }
  return Congruence::from_blocks(a.n, normalize(raw));
}

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

Congruence from_union_find(int n, UnionFind& uf) {
  std::vector<int> raw(n);
  for (int i = 0; i < n; ++i) {
    raw[i] = uf.find(i);
  }
  return Congruence::from_blocks(n, raw);
}

}  // namespace

Congruence cong_join(Congruence const& a, Congruence const& b) {
  UnionFind uf(a.n);
  for (int i = 0; i < a.n; ++i) {
    for (int j = i + 1; j < a.n; ++j) {
      if (a.block[i] == a.block[j] || b.block[i] == b.block[j]) {
        uf.unite(i, j);
      }
    }
  }
  return from_union_find(a.n, uf);
}

Congruence congruence_generated(IMonoid const& alg,
                                std::vector<std::pair<elem, elem>> const& pairs) {
  int n = alg.n;
  UnionFind uf(n);
  std::vector<std::pair<elem, elem>> work;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw std::invalid_argument("congruence_generated: element out of range");
    }
    if (uf.unite(a, b)) {
      work.emplace_back(a, b);
    }
  }
  // Close under the unary polynomial translations z -> z', z -> c*z,
  // z -> z*c; one-step translation closure generates the congruence.
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    auto merge = [&](elem x, elem y) {
      if (uf.unite(x, y)) {
        work.emplace_back(x, y);
      }
    };
    merge(alg.inv_at(a), alg.inv_at(b));
    for (elem c = 0; c < n; ++c) {
      merge(alg.at(c, a), alg.at(c, b));
      merge(alg.at(a, c), alg.at(b, c));
    }
  }
  return from_union_find(n, uf);
}

Congruence principal_tilde(IMonoid const& alg, elem a) {
  if (!is_mccarthy(alg)) {
    throw PreconditionError("principal_tilde: not a McCarthy algebra");
  }
  if (a >= alg.n) {
    throw std::invalid_argument("principal_tilde: element out of range");
  }
  std::vector<int> raw(alg.n);
  for (elem z = 0; z < alg.n; ++z) {
    raw[z] = alg.at(a, z);
  }
  return Congruence::from_blocks(alg.n, raw);
}

CongruenceLattice all_congruences(IMonoid const& alg, int size_cap) {
  if (alg.n > size_cap) {
    throw BudgetError("all_congruences: size cap exceeded");
  }
  std::set<std::vector<int>> seen;
  std::vector<Congruence> elements;
  auto add = [&](Congruence c) {
    if (seen.insert(c.block).second) {
      elements.push_back(std::move(c));
      return true;
    }
    return false;
  };
  add(Congruence::identity(alg.n));
  for (elem a = 0; a < alg.n; ++a) {
    for (elem b = a + 1; b < alg.n; ++b) {
      add(congruence_generated(alg, {{a, b}}));
    }
  }
  // join closure
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t count = elements.size();
    for (std::size_t i = 0; i < count && !grew; ++i) {
      for (std::size_t j = i + 1; j < count && !grew; ++j) {
        Congruence joined = cong_join(elements[i], elements[j]);
        if (add(std::move(joined))) {
          grew = true;
        }
      }
    }
  }
  std::sort(elements.begin(), elements.end(),
            [](Congruence const& x, Congruence const& y) {
              return std::pair(x.num_blocks(), x.block)
                     > std::pair(y.num_blocks(), y.block);
            });
  return {std::move(elements)};
}

SIResult is_subdirectly_irreducible(IMonoid const& alg, int size_cap) {
  if (alg.n <= 1) {
    return {false, std::nullopt};
  }
  CongruenceLattice lattice = all_congruences(alg, size_cap);
  std::optional<Congruence> monolith;
  for (auto const& c : lattice.elements) {
    if (c.is_identity()) {
      continue;
    }
    monolith = monolith ? cong_meet(*monolith, c) : c;
  }
  if (monolith && !monolith->is_identity()) {
    return {true, monolith};
  }
  return {false, std::nullopt};
}

Quotient quotient(IMonoid const& alg, Congruence const& c) {
  if (!compatible(alg, c)) {
    throw std::invalid_argument("quotient: partition is not a congruence");
  }
  int m = c.num_blocks();
  std::vector<elem> rep(m, UNDEF);
  for (int i = 0; i < alg.n; ++i) {
    if (rep[c.block[i]] == UNDEF) {
      rep[c.block[i]] = static_cast<elem>(i);
    }
  }
  IMonoid q;
  q.n = m;
  q.unit = static_cast<elem>(c.block[alg.unit]);
  q.inv.resize(m);
  q.mul.resize(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    q.inv[i] = static_cast<elem>(c.block[alg.inv_at(rep[i])]);
    for (int j = 0; j < m; ++j) {
      q.mul[static_cast<std::size_t>(i) * m + j] =
          static_cast<elem>(c.block[alg.at(rep[i], rep[j])]);
    }
  }
  if (!alg.name.empty()) {
    q.name = alg.name + "/~";
  }
  q = validate(std::move(q));
  std::vector<elem> projection(alg.n);
  for (int i = 0; i < alg.n; ++i) {
    projection[i] = static_cast<elem>(c.block[i]);
  }
  return {std::move(q), std::move(projection)};
}

Subalgebra subalgebra_generated(IMonoid const& alg,
                                std::vector<elem> const& subset) {
  std::vector<bool> in(alg.n, false);
  std::vector<elem> work;
  auto add = [&](elem x) {
    if (x >= alg.n) {
      throw std::invalid_argument("subalgebra_generated: element out of range");
    }
    if (!in[x]) {
      in[x] = true;
      work.push_back(x);
    }
  };
  add(alg.unit);
  for (elem x : subset) {
    add(x);
  }
  while (!work.empty()) {
    elem x = work.back();
    work.pop_back();
    add(alg.inv_at(x));
    for (elem y = 0; y < alg.n; ++y) {
      if (in[y]) {
        add(alg.at(x, y));
        add(alg.at(y, x));
      }
    }
  }
  std::vector<elem> inclusion;
  std::vector<elem> local(alg.n, UNDEF);
  for (elem x = 0; x < alg.n; ++x) {
    if (in[x]) {
      local[x] = static_cast<elem>(inclusion.size());
      inclusion.push_back(x);
    }
  }
  IMonoid sub;
  sub.n = static_cast<int>(inclusion.size());
  sub.unit = local[alg.unit];
  sub.inv.resize(sub.n);
  sub.mul.resize(static_cast<std::size_t>(sub.n) * sub.n);
  for (int i = 0; i < sub.n; ++i) {
    sub.inv[i] = local[alg.inv_at(inclusion[i])];
    for (int j = 0; j < sub.n; ++j) {
      sub.mul[static_cast<std::size_t>(i) * sub.n + j] =
          local[alg.at(inclusion[i], inclusion[j])];
    }
  }
  if (!alg.element_names.empty()) {
    for (elem x : inclusion) {
      sub.element_names.push_back(alg.element_names[x]);
    }
  }
  sub = validate(std::move(sub));
  return {std::move(sub), std::move(inclusion)};
}

std::vector<std::vector<elem>> homomorphisms(IMonoid const& a, IMonoid const& b,
                                             long long node_cap) {
  std::vector<std::vector<elem>> out;
  std::vector<elem> f(a.n, UNDEF);
  std::vector<elem> assigned;
  long long nodes = 0;

  // Domain order: unit and 0 first (their images are forced), then the rest.
  std::vector<elem> order;
  order.push_back(a.unit);
  if (a.zero() != a.unit) {
    order.push_back(a.zero());
  }
  for (elem x = 0; x < a.n; ++x) {
    if (x != a.unit && x != a.zero()) {
      order.push_back(x);
    }
  }

  auto consistent = [&](elem x) {
    if (f[a.inv_at(x)] != UNDEF && f[a.inv_at(x)] != b.inv_at(f[x])) {
      return false;
    }
    for (elem u = 0; u < a.n; ++u) {
      if (f[u] == UNDEF) {
        continue;
      }
      elem p = a.at(x, u);
      if (f[p] != UNDEF && f[p] != b.at(f[x], f[u])) {
        return false;
      }
      elem q = a.at(u, x);
      if (f[q] != UNDEF && f[q] != b.at(f[u], f[x])) {
        return false;
      }
    }
    return true;
  };

  auto push = [&](elem x, elem y) {
    f[x] = y;
    assigned.push_back(x);
    return consistent(x);
  };

  auto undo_to = [&](std::size_t mark) {
    while (assigned.size() > mark) {
      f[assigned.back()] = UNDEF;
      assigned.pop_back();
    }
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t pos) {
    if (++nodes > node_cap) {
      throw BudgetError("homomorphism search node cap exceeded");
    }
    while (pos < order.size() && f[order[pos]] != UNDEF) {
      ++pos;
    }
    if (pos == order.size()) {
      out.push_back(f);
      return;
    }
    elem x = order[pos];
    elem xi = a.inv_at(x);
    for (elem y = 0; y < b.n; ++y) {
      std::size_t mark = assigned.size();
      bool ok = push(x, y);
      if (ok && f[xi] == UNDEF) {
        ok = push(xi, b.inv_at(y));
      }
      if (ok) {
        dfs(pos + 1);
      }
      undo_to(mark);
    }
  };

  bool ok = push(a.unit, b.unit);
  if (ok && f[a.zero()] == UNDEF) {
    ok = push(a.zero(), b.zero());
  }
  if (ok) {
    dfs(0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IMonoid direct_product(IMonoid const& a, IMonoid const& b) {
  IMonoid p;
  p.n = a.n * b.n;
  if (p.n > MAX_SIZE) {
    throw std::invalid_argument("direct_product: result too large");
  }
  p.unit = static_cast<elem>(a.unit * b.n + b.unit);
  p.inv.resize(p.n);
  p.mul.resize(static_cast<std::size_t>(p.n) * p.n);
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < b.n; ++j) {
      int x = i * b.n + j;
      p.inv[x] = static_cast<elem>(a.inv_at(static_cast<elem>(i)) * b.n
                                   + b.inv_at(static_cast<elem>(j)));
      for (int k = 0; k < a.n; ++k) {
        for (int l = 0; l < b.n; ++l) {
          int y = k * b.n + l;
          p.mul[static_cast<std::size_t>(x) * p.n + y] = static_cast<elem>(
              a.at(static_cast<elem>(i), static_cast<elem>(k)) * b.n
              + b.at(static_cast<elem>(j), static_cast<elem>(l)));
        }
      }
    }
  }
  if (!a.name.empty() && !b.name.empty()) {
    p.name = a.name + "x" + b.name;
  }
  return validate(std::move(p));
}

}  // namespace imono
