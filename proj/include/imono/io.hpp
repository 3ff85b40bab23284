#ifndef IMONO_IO_HPP_
#define IMONO_IO_HPP_

#include <iosfwd>
#include <string>

#include "imonoid.hpp"
#include "mccarthy.hpp"

namespace imono {

// Algebra text format (lines starting '#' are comments and are skipped on
// input; the writer never emits them, so read/write round-trips are
// byte-stable modulo comments):
//   algebra <name>
//   size <n>
//   unit <i>
//   inv <i0> ... <i(n-1)>
//   mul
//   <n lines of n space-separated indices>
std::string write_algebra(IMonoid const& a);
IMonoid read_algebra(std::istream& in);
IMonoid read_algebra_string(std::string const& text);
IMonoid read_algebra_file(std::string const& path);
void write_algebra_file(IMonoid const& a, std::string const& path);

// Decorated poset format ("le" rows are the reflexive order matrix):
//   poset <name>
//   size <n>
//   skeleton <i ...>
//   le
//   <n lines of n 0/1>
std::string write_poset(DecoratedPoset const& p);
DecoratedPoset read_poset(std::istream& in);
DecoratedPoset read_poset_string(std::string const& text);
DecoratedPoset read_poset_file(std::string const& path);
void write_poset_file(DecoratedPoset const& p, std::string const& path);

// Bottomed semilattice format:
//   semilattice <name>
//   size <n>
//   bottom <i>
//   join
//   <n lines of n space-separated indices>
std::string write_semilattice(BotSemilattice const& s);
BotSemilattice read_semilattice(std::istream& in);
BotSemilattice read_semilattice_string(std::string const& text);
BotSemilattice read_semilattice_file(std::string const& path);

// Hasse diagram of the decorated poset: edges are the covering relation
// (transitive reduction), skeleton nodes drawn unfilled, others filled.
// Node order and edge order are deterministic.
std::string poset_dot(DecoratedPoset const& p,
                      std::vector<std::string> const& node_names = {});

}  // namespace imono

#endif  // IMONO_IO_HPP_
