#include "imono/io.hpp"

#include <fstream>
#include <sstream>

namespace imono {

namespace {

// Line reader that drops comment lines (leading '#') and blank lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : _in(in) {}

  std::string next(std::string const& what) {
    std::string line;
    while (std::getline(_in, line)) {
      std::size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos || line[i] == '#') {
        continue;
      }
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      return line;
    }
    throw std::runtime_error("unexpected end of file, expected " + what);
  }

 private:
  std::istream& _in;
};

std::pair<std::string, std::string> keyword_line(std::string const& line,
                                                 std::string const& keyword) {
  std::istringstream is(line);
  std::string head;
  is >> head;
  if (head != keyword) {
    throw std::runtime_error("expected '" + keyword + "' line, got: " + line);
  }
  std::string rest;
  std::getline(is, rest);
  std::size_t i = rest.find_first_not_of(' ');
  return {head, i == std::string::npos ? std::string() : rest.substr(i)};
}

int int_field(std::string const& line, std::string const& keyword) {
  auto [head, rest] = keyword_line(line, keyword);
  return std::stoi(rest);
}

std::vector<elem> row_of(std::string const& line, int n,
                         std::string const& what) {
  std::istringstream is(line);
  std::vector<elem> out;
  int v;
  while (is >> v) {
    if (v < 0 || v > 0xfe) {
      throw std::runtime_error("entry out of range in " + what);
    }
    out.push_back(static_cast<elem>(v));
  }
  if (static_cast<int>(out.size()) != n) {
    throw std::runtime_error("expected " + std::to_string(n) + " entries in "
                             + what + ", got " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace

std::string write_algebra(IMonoid const& a) {
  std::ostringstream os;
  os << "algebra " << (a.name.empty() ? "unnamed" : a.name) << "\n";
  os << "size " << a.n << "\n";
  os << "unit " << static_cast<int>(a.unit) << "\n";
  os << "inv";
  for (elem v : a.inv) {
    os << ' ' << static_cast<int>(v);
  }
  os << "\nmul\n";
  for (int r = 0; r < a.n; ++r) {
    for (int c = 0; c < a.n; ++c) {
      if (c > 0) {
        os << ' ';
      }
      os << static_cast<int>(a.mul[static_cast<std::size_t>(r) * a.n + c]);
    }
    os << "\n";
  }
  return os.str();
}

IMonoid read_algebra(std::istream& in) {
  LineReader r(in);
  IMonoid a;
  a.name = keyword_line(r.next("algebra"), "algebra").second;
  a.n = int_field(r.next("size"), "size");
  if (a.n < 1 || a.n > MAX_SIZE) {
    throw std::runtime_error("algebra size out of range");
  }
  int unit = int_field(r.next("unit"), "unit");
  if (unit < 0 || unit >= a.n) {
    throw std::runtime_error("unit index out of range");
  }
  a.unit = static_cast<elem>(unit);
  a.inv = row_of(keyword_line(r.next("inv"), "inv").second, a.n, "inv");
  keyword_line(r.next("mul"), "mul");
  for (int i = 0; i < a.n; ++i) {
    auto row = row_of(r.next("mul row"), a.n, "mul row");
    a.mul.insert(a.mul.end(), row.begin(), row.end());
  }
  return validate(std::move(a));
}

IMonoid read_algebra_string(std::string const& text) {
  std::istringstream is(text);
  return read_algebra(is);
}

IMonoid read_algebra_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return read_algebra(in);
}

void write_algebra_file(IMonoid const& a, std::string const& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << write_algebra(a);
}

std::string write_poset(DecoratedPoset const& p) {
  std::ostringstream os;
  os << "poset " << (p.name.empty() ? "unnamed" : p.name) << "\n";
  os << "size " << p.n << "\n";
  os << "skeleton";
  for (int i = 0; i < p.n; ++i) {
    if (p.skel[i]) {
      os << ' ' << i;
    }
  }
  os << "\nle\n";
  for (int r = 0; r < p.n; ++r) {
    for (int c = 0; c < p.n; ++c) {
      if (c > 0) {
        os << ' ';
      }
      os << (p.leq[static_cast<std::size_t>(r) * p.n + c] ? 1 : 0);
    }
    os << "\n";
  }
  return os.str();
}

DecoratedPoset read_poset(std::istream& in) {
  LineReader r(in);
  DecoratedPoset p;
  p.name = keyword_line(r.next("poset"), "poset").second;
  p.n = int_field(r.next("size"), "size");
  if (p.n < 1 || p.n > MAX_SIZE) {
    throw std::runtime_error("poset size out of range");
  }
  p.skel.assign(p.n, 0);
  {
    std::istringstream is(keyword_line(r.next("skeleton"), "skeleton").second);
    int v;
    while (is >> v) {
      if (v < 0 || v >= p.n) {
        throw std::runtime_error("skeleton index out of range");
      }
      p.skel[v] = 1;
    }
  }
  keyword_line(r.next("le"), "le");
  for (int i = 0; i < p.n; ++i) {
    auto row = row_of(r.next("le row"), p.n, "le row");
    for (elem v : row) {
      if (v > 1) {
        throw std::runtime_error("le entries must be 0 or 1");
      }
      p.leq.push_back(v);
    }
  }
  return p;
}

DecoratedPoset read_poset_string(std::string const& text) {
  std::istringstream is(text);
  return read_poset(is);
}

DecoratedPoset read_poset_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return read_poset(in);
}

void write_poset_file(DecoratedPoset const& p, std::string const& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << write_poset(p);
}

std::string write_semilattice(BotSemilattice const& s) {
  std::ostringstream os;
  os << "semilattice " << (s.name.empty() ? "unnamed" : s.name) << "\n";
  os << "size " << s.n << "\n";
  os << "bottom " << static_cast<int>(s.bottom) << "\n";
  os << "join\n";
  for (int r = 0; r < s.n; ++r) {
    for (int c = 0; c < s.n; ++c) {
      if (c > 0) {
        os << ' ';
      }
      os << static_cast<int>(s.join[static_cast<std::size_t>(r) * s.n + c]);
    }
    os << "\n";
  }
  return os.str();
}

BotSemilattice read_semilattice(std::istream& in) {
  LineReader r(in);
  BotSemilattice s;
  s.name = keyword_line(r.next("semilattice"), "semilattice").second;
  s.n = int_field(r.next("size"), "size");
  if (s.n < 1 || s.n > MAX_SIZE) {
    throw std::runtime_error("semilattice size out of range");
  }
  int bottom = int_field(r.next("bottom"), "bottom");
  if (bottom < 0 || bottom >= s.n) {
    throw std::runtime_error("bottom index out of range");
  }
  s.bottom = static_cast<elem>(bottom);
  keyword_line(r.next("join"), "join");
  for (int i = 0; i < s.n; ++i) {
    auto row = row_of(r.next("join row"), s.n, "join row");
    s.join.insert(s.join.end(), row.begin(), row.end());
  }
  return validate_semilattice(std::move(s));
}

BotSemilattice read_semilattice_string(std::string const& text) {
  std::istringstream is(text);
  return read_semilattice(is);
}

BotSemilattice read_semilattice_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return read_semilattice(in);
}

std::string poset_dot(DecoratedPoset const& p,
                      std::vector<std::string> const& node_names) {
  int n = p.n;
  auto at = [&](int a, int b) { return p.leq[static_cast<std::size_t>(a) * n + b] != 0; };
  std::ostringstream os;
  os << "digraph \"" << (p.name.empty() ? "poset" : p.name) << "\" {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=circle, style=filled];\n";
  for (int i = 0; i < n; ++i) {
    std::string label = i < static_cast<int>(node_names.size())
                            ? node_names[i]
                            : std::to_string(i);
    if (p.skel[i]) {
      os << "  n" << i << " [fillcolor=white, label=\"" << label << "\"];\n";
    } else {
      os << "  n" << i << " [fillcolor=black, fontcolor=white, label=\""
         << label << "\"];\n";
    }
  }
  // Covering relation: a < b with nothing strictly between.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || !at(a, b)) {
        continue;
      }
      bool covered = true;
      for (int c = 0; c < n; ++c) {
        if (c != a && c != b && at(a, c) && at(c, b)) {
          covered = false;
          break;
        }
      }
      if (covered) {
        os << "  n" << a << " -> n" << b << ";\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace imono
