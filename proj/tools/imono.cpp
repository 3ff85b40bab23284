// Command-line front end: spectrum, check, enumerate, decompose, poset,
// reconstruct, build-sl2, si, iso, scan-order.
//
// Exit codes: 0 ok / 1 property-FAIL verdict / 2 usage or input error /
// 3 budget exceeded / 4 internal invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "imono/catalog.hpp"
#include "imono/enumerate.hpp"
#include "imono/io.hpp"
#include "imono/mccarthy.hpp"
#include "imono/structure.hpp"

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_FAIL = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_BUDGET = 3;
constexpr int EXIT_INTERNAL = 4;

struct AlgebraInput {
  std::string builtin;
  std::string file;

  imono::IMonoid load() const {
    if (!builtin.empty()) {
      return imono::builtin(builtin);
    }
    if (!file.empty()) {
      return imono::read_algebra_file(file);
    }
    throw std::invalid_argument("no algebra given: use --builtin or --file");
  }
};

void add_algebra_options(CLI::App* cmd, AlgebraInput& in) {
  cmd->add_option("--builtin", in.builtin, "builtin algebra name");
  cmd->add_option("--file", in.file, "algebra file");
}

void emit(std::string const& text, std::string const& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw std::runtime_error("cannot write " + out_path);
    }
    out << text;
  }
}

std::string spectrum_csv(imono::SpectrumResult const& result) {
  std::string csv = "n,count,seconds\n";
  for (auto const& row : result.rows) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%lld,%.3f\n", row.n, row.count,
                  row.seconds);
    csv += buf;
  }
  return csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite i-monoid and McCarthy algebra toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  double budget_seconds = 1800;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--budget-seconds", budget_seconds,
                 "time budget per enumeration");

  auto config = [&] {
    imono::EnumerateConfig c;
    c.threads = threads;
    c.budget_seconds = budget_seconds;
    return c;
  };

  // ---- spectrum ----
  auto* sp = app.add_subcommand("spectrum", "fine spectrum of a theory");
  std::string sp_theory = "mccarthy";
  int sp_max = 10;
  std::string sp_out;
  sp->add_option("--theory", sp_theory, "theory bundle or key list");
  sp->add_option("--max", sp_max, "largest size")->required();
  sp->add_option("--out", sp_out, "output CSV path (default stdout)");

  // ---- check ----
  auto* ck = app.add_subcommand("check", "check an identity or theory");
  AlgebraInput ck_in;
  add_algebra_options(ck, ck_in);
  std::string ck_theory, ck_id, ck_quasi;
  ck->add_option("--theory", ck_theory, "theory bundle or key list");
  ck->add_option("--id", ck_id, "identity, e.g. \"x*(x+y) = x\"");
  ck->add_option("--quasi", ck_quasi, "quasi-identity, e.g. \"1 = 0 => x = y\"");

  // ---- enumerate ----
  auto* en = app.add_subcommand("enumerate", "models of a theory up to iso");
  std::string en_theory = "mccarthy";
  int en_size = 0;
  std::string en_out;
  en->add_option("--theory", en_theory, "theory bundle or key list");
  en->add_option("--size", en_size, "model size")->required();
  en->add_option("--out", en_out, "output directory for .alg files");

  // ---- decompose ----
  auto* de = app.add_subcommand("decompose", "semilattice direct system");
  AlgebraInput de_in;
  add_algebra_options(de, de_in);

  // ---- poset ----
  auto* po = app.add_subcommand("poset", "decorated poset of an algebra");
  AlgebraInput po_in;
  add_algebra_options(po, po_in);
  std::string po_out, po_dot;
  po->add_option("--out", po_out, "poset file (default stdout)");
  po->add_option("--dot", po_dot, "also write a DOT Hasse diagram");

  // ---- reconstruct ----
  auto* rc = app.add_subcommand("reconstruct",
                                "rebuild the algebra from a decorated poset");
  std::string rc_poset, rc_out;
  rc->add_option("--poset", rc_poset, "poset file")->required();
  rc->add_option("--out", rc_out, "algebra file (default stdout)");

  // ---- build-sl2 ----
  auto* bs = app.add_subcommand("build-sl2",
                                "I[2] construction over a semilattice");
  std::string bs_sl, bs_out;
  bool bs_top = false;
  bs->add_option("--semilattice", bs_sl, "semilattice file")->required();
  bs->add_flag("--adjoin-top", bs_top,
               "adjoin a top and collapse its fiber to eps");
  bs->add_option("--out", bs_out, "algebra file (default stdout)");

  // ---- si ----
  auto* si = app.add_subcommand("si", "subdirect irreducibility");
  AlgebraInput si_in;
  add_algebra_options(si, si_in);

  // ---- iso ----
  auto* is = app.add_subcommand("iso", "isomorphism test");
  AlgebraInput is_a;
  add_algebra_options(is, is_a);
  std::string is_with, is_file2;
  is->add_option("--with", is_with, "builtin to compare against");
  is->add_option("--file2", is_file2, "algebra file to compare against");

  // ---- scan-order ----
  auto* so = app.add_subcommand("scan-order",
                                "search for order-isomorphic non-isomorphic "
                                "McCarthy algebras");
  int so_max = 10;
  so->add_option("--max", so_max, "largest size")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? EXIT_OK : EXIT_USAGE;
  }

  try {
    if (*sp) {
      auto result =
          imono::fine_spectrum(sp_max, imono::TheorySpec::parse(sp_theory),
                               config());
      emit(spectrum_csv(result), sp_out);
      if (!result.complete) {
        std::cerr << "error: budget exhausted after n="
                  << (result.rows.empty() ? 0 : result.rows.back().n) << "\n";
        return EXIT_BUDGET;
      }
      return EXIT_OK;
    }

    if (*ck) {
      imono::IMonoid alg = ck_in.load();
      if (!ck_theory.empty()) {
        auto r = imono::satisfies_theory(alg,
                                         imono::TheorySpec::parse(ck_theory));
        if (r.ok) {
          std::cout << "PASS\n";
          return EXIT_OK;
        }
        auto const* law = imono::catalog_find(r.failed_key);
        std::cout << "FAIL key=" << r.failed_key << " witness: "
                  << imono::format_witness(alg, law->law.var_names, r.witness)
                  << " lhs=" << alg.display(r.lhs_value)
                  << " rhs=" << alg.display(r.rhs_value) << "\n";
        return EXIT_FAIL;
      }
      if (!ck_id.empty() || !ck_quasi.empty()) {
        imono::QuasiIdentity law =
            ck_id.empty() ? imono::parse_quasi_identity(ck_quasi)
                          : imono::parse_quasi_identity(ck_id);
        imono::CheckResult r = imono::check_quasi_identity(alg, law);
        if (r.holds) {
          std::cout << "PASS\n";
          return EXIT_OK;
        }
        std::cout << "FAIL witness: "
                  << imono::format_witness(alg, law.var_names, r.witness)
                  << " lhs=" << alg.display(r.lhs_value)
                  << " rhs=" << alg.display(r.rhs_value) << "\n";
        return EXIT_FAIL;
      }
      throw std::invalid_argument("check: need --theory, --id or --quasi");
    }

    if (*en) {
      auto models = imono::enumerate_models(
          en_size, imono::TheorySpec::parse(en_theory), config());
      if (en_out.empty()) {
        for (auto const& m : models) {
          std::cout << imono::write_algebra(m);
        }
      } else {
        std::filesystem::create_directories(en_out);
        for (auto const& m : models) {
          imono::write_algebra_file(m, en_out + "/" + m.name + ".alg");
        }
      }
      std::cerr << models.size() << " model(s)\n";
      return EXIT_OK;
    }

    if (*de) {
      imono::IMonoid alg = de_in.load();
      imono::DirectSystem ds = imono::decompose(alg);
      std::cout << "skeleton:";
      for (imono::elem e : ds.sk.elems) {
        std::cout << ' ' << alg.display(e);
      }
      std::cout << "\n";
      for (std::size_t i = 0; i < ds.fib.size(); ++i) {
        auto const& f = ds.fib[i];
        std::cout << "fiber " << alg.display(f.bottom) << ": bounds=["
                  << alg.display(f.bottom) << "," << alg.display(f.top)
                  << "] elems={";
        for (std::size_t k = 0; k < f.elems.size(); ++k) {
          std::cout << (k ? "," : "") << alg.display(f.elems[k]);
        }
        std::cout << "}\n";
      }
      for (auto const& [ij, p] : ds.trans) {
        auto [i, j] = ij;
        if (i == j) {
          continue;
        }
        std::cout << "p_{" << alg.display(ds.sk.elems[i]) << ","
                  << alg.display(ds.sk.elems[j]) << "}:";
        for (std::size_t k = 0; k < p.size(); ++k) {
          std::cout << ' ' << alg.display(ds.fib[i].elems[k]) << "->"
                    << alg.display(p[k]);
        }
        std::cout << "\n";
      }
      return EXIT_OK;
    }

    if (*po) {
      imono::IMonoid alg = po_in.load();
      imono::DecoratedPoset dp = imono::decorated_poset(alg);
      emit(imono::write_poset(dp), po_out);
      if (!po_dot.empty()) {
        std::vector<std::string> names;
        for (imono::elem e = 0; e < alg.n; ++e) {
          names.push_back(alg.display(e));
        }
        emit(imono::poset_dot(dp, names), po_dot);
      }
      return EXIT_OK;
    }

    if (*rc) {
      imono::DecoratedPoset dp = imono::read_poset_file(rc_poset);
      imono::IMonoid alg = imono::reconstruct(dp);
      emit(imono::write_algebra(alg), rc_out);
      return EXIT_OK;
    }

    if (*bs) {
      imono::BotSemilattice sl = imono::read_semilattice_file(bs_sl);
      imono::IMonoid alg =
          bs_top ? imono::construct_I2_eps(sl) : imono::construct_I2(sl);
      emit(imono::write_algebra(alg), bs_out);
      return EXIT_OK;
    }

    if (*si) {
      imono::IMonoid alg = si_in.load();
      imono::SIResult r = imono::is_subdirectly_irreducible(alg);
      if (r.irreducible) {
        std::cout << "SI monolith=" << r.monolith->to_string()
                  << " blockids=";
        for (int i = 0; i < r.monolith->n; ++i) {
          std::cout << (i ? "," : "") << r.monolith->block[i];
        }
        std::cout << "\n";
      } else {
        std::cout << "NOT-SI\n";
      }
      return EXIT_OK;
    }

    if (*is) {
      imono::IMonoid a = is_a.load();
      imono::IMonoid b;
      if (!is_with.empty()) {
        b = imono::builtin(is_with);
      } else if (!is_file2.empty()) {
        b = imono::read_algebra_file(is_file2);
      } else {
        throw std::invalid_argument("iso: need --with or --file2");
      }
      imono::IsoResult r = imono::find_isomorphism(a, b);
      if (r.isomorphic) {
        std::cout << "ISOMORPHIC map:";
        for (std::size_t i = 0; i < r.map.size(); ++i) {
          std::cout << ' ' << a.display(static_cast<imono::elem>(i)) << "->"
                    << b.display(r.map[i]);
        }
        std::cout << "\n";
        return EXIT_OK;
      }
      std::cout << "NOT-ISOMORPHIC\n";
      return EXIT_FAIL;
    }

    if (*so) {
      auto hits = imono::scan_order_conjecture(so_max, config());
      if (hits.empty()) {
        std::cout << "OK no order-isomorphic non-isomorphic pairs up to n="
                  << so_max << "\n";
        return EXIT_OK;
      }
      for (auto const& h : hits) {
        std::cout << "COUNTEREXAMPLE n=" << h.n << " " << h.a.name << " "
                  << h.b.name << "\n";
      }
      return EXIT_FAIL;
    }
  } catch (imono::BudgetError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_BUDGET;
  } catch (imono::InternalError const& e) {
    std::cerr << "error: internal invariant violation: " << e.what() << "\n";
    return EXIT_INTERNAL;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  }
  return EXIT_USAGE;
}
