// Shared helpers for the test suites: a naive generate-and-filter model
// enumerator (independent of the search code under test), brute-force
// isomorphism bucketing, a brute-force semilattice enumerator, and a cache
// of enumerated model lists so expensive enumerations run once per binary.
#ifndef IMONO_TESTS_SUPPORT_HPP_
#define IMONO_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "imono/catalog.hpp"
#include "imono/enumerate.hpp"
#include "imono/imonoid.hpp"
#include "imono/mccarthy.hpp"

namespace imono::testing {

// Brute-force isomorphism: try every permutation fixing the unit. Only
// usable for tiny sizes; deliberately independent of find_isomorphism.
inline bool brute_isomorphic(IMonoid const& a, IMonoid const& b) {
  if (a.n != b.n) {
    return false;
  }
  int n = a.n;
  std::vector<elem> others;
  for (elem x = 0; x < n; ++x) {
    if (x != a.unit) {
      others.push_back(x);
    }
  }
  std::sort(others.begin(), others.end());
  do {
    std::vector<elem> f(n);
    f[a.unit] = b.unit;
    std::vector<elem> targets;
    for (elem y = 0; y < n; ++y) {
      if (y != b.unit) {
        targets.push_back(y);
      }
    }
    for (std::size_t i = 0; i < others.size(); ++i) {
      f[others[i]] = targets[i];
    }
    bool ok = true;
    for (elem x = 0; x < n && ok; ++x) {
      if (f[a.inv_at(x)] != b.inv_at(f[x])) {
        ok = false;
      }
      for (elem y = 0; y < n && ok; ++y) {
        if (f[a.at(x, y)] != b.at(f[x], f[y])) {
          ok = false;
        }
      }
    }
    if (ok) {
      return true;
    }
  } while (std::next_permutation(others.begin(), others.end()));
  return false;
}

// Naive enumerator: unit pinned at 0, all involutions, all free mul cells
// (diagonal and unit row/column are forced by the axioms being targeted),
// filter by full associativity, then by the theory via check_identity, and
// bucket with brute-force isomorphism. The oracle for all enumeration counts
// at n <= 4.
inline std::vector<IMonoid> naive_models(int n, TheorySpec const& theory) {
  std::vector<IMonoid> classes;
  std::vector<NamedIdentity const*> laws = theory.resolve();

  std::vector<std::vector<elem>> involutions;
  std::vector<elem> inv(n);
  std::function<void(int)> gen_inv = [&](int i) {
    if (i == n) {
      involutions.push_back(inv);
      return;
    }
    for (elem v = 0; v < n; ++v) {
      inv[i] = v;
      gen_inv(i + 1);
    }
  };
  gen_inv(0);
  involutions.erase(std::remove_if(involutions.begin(), involutions.end(),
                                   [&](std::vector<elem> const& t) {
                                     for (int i = 0; i < n; ++i) {
                                       if (t[t[i]] != i) {
                                         return true;
                                       }
                                     }
                                     return false;
                                   }),
                    involutions.end());

  std::vector<std::pair<int, int>> free_cells;
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b < n; ++b) {
      if (a != b) {
        free_cells.emplace_back(a, b);
      }
    }
  }

  for (auto const& iv : involutions) {
    IMonoid m;
    m.n = n;
    m.unit = 0;
    m.inv = iv;
    m.mul.assign(static_cast<std::size_t>(n) * n, 0);
    for (elem x = 0; x < n; ++x) {
      m.mul[static_cast<std::size_t>(0) * n + x] = x;
      m.mul[static_cast<std::size_t>(x) * n] = x;
      m.mul[static_cast<std::size_t>(x) * n + x] = x;
    }
    std::function<void(std::size_t)> fill = [&](std::size_t i) {
      if (i == free_cells.size()) {
        for (elem x = 0; x < n; ++x) {
          for (elem y = 0; y < n; ++y) {
            for (elem z = 0; z < n; ++z) {
              if (m.at(m.at(x, y), z) != m.at(x, m.at(y, z))) {
                return;
              }
            }
          }
        }
        for (auto const* law : laws) {
          CheckResult r = law->is_identity()
                              ? check_identity(m, law->identity())
                              : check_quasi_identity(m, law->law);
          if (!r.holds) {
            return;
          }
        }
        for (auto const& rep : classes) {
          if (brute_isomorphic(rep, m)) {
            return;
          }
        }
        classes.push_back(m);
        return;
      }
      auto [a, b] = free_cells[i];
      for (elem v = 0; v < n; ++v) {
        m.mul[static_cast<std::size_t>(a) * n + b] = v;
        fill(i + 1);
      }
    };
    fill(0);
  }
  return classes;
}

// All bottomed semilattices of size n up to isomorphism, by brute force:
// bottom pinned at 0 (its row/column and the diagonal are forced), free
// upper-triangle cells enumerated, associativity filtered, dedup by
// bottom-fixing permutations.
inline std::vector<BotSemilattice> naive_semilattices(int n) {
  std::vector<BotSemilattice> out;
  std::vector<std::pair<int, int>> cells;
  for (int a = 1; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      cells.emplace_back(a, b);
    }
  }
  BotSemilattice s;
  s.n = n;
  s.bottom = 0;
  s.join.assign(static_cast<std::size_t>(n) * n, 0);
  for (elem x = 0; x < n; ++x) {
    s.join[static_cast<std::size_t>(0) * n + x] = x;
    s.join[static_cast<std::size_t>(x) * n] = x;
    s.join[static_cast<std::size_t>(x) * n + x] = x;
  }
  auto iso = [&](BotSemilattice const& a, BotSemilattice const& b) {
    std::vector<elem> perm;
    for (elem x = 1; x < n; ++x) {
      perm.push_back(x);
    }
    do {
      std::vector<elem> f(n);
      f[0] = 0;
      for (int i = 1; i < n; ++i) {
        f[i] = perm[i - 1];
      }
      bool ok = true;
      for (elem x = 0; x < n && ok; ++x) {
        for (elem y = 0; y < n && ok; ++y) {
          if (f[a.at(x, y)] != b.at(f[x], f[y])) {
            ok = false;
          }
        }
      }
      if (ok) {
        return true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == cells.size()) {
      for (elem x = 0; x < n; ++x) {
        for (elem y = 0; y < n; ++y) {
          for (elem z = 0; z < n; ++z) {
            if (s.at(s.at(x, y), z) != s.at(x, s.at(y, z))) {
              return;
            }
          }
        }
      }
      for (auto const& rep : out) {
        if (iso(rep, s)) {
          return;
        }
      }
      out.push_back(s);
      return;
    }
    auto [a, b] = cells[i];
    for (elem v = 0; v < n; ++v) {
      s.join[static_cast<std::size_t>(a) * n + b] = v;
      s.join[static_cast<std::size_t>(b) * n + a] = v;
      fill(i + 1);
    }
  };
  fill(0);
  return out;
}

inline std::vector<IMonoid> const& models_cached(std::string const& theory,
                                                 int n) {
  static std::map<std::pair<std::string, int>, std::vector<IMonoid>> cache;
  auto key = std::pair(theory, n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, enumerate_models(n, TheorySpec::parse(theory)))
             .first;
  }
  return it->second;
}

}  // namespace imono::testing

#endif  // IMONO_TESTS_SUPPORT_HPP_
