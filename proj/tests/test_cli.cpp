// End-to-end tests of the command-line surface. The binary path comes from
// $IMONO_CLI (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(std::string const& args) {
  char const* cli = std::getenv("IMONO_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = std::string(cli) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe) != nullptr) {
    out += buf;
  }
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "imono_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(std::filesystem::path const& p, std::string const& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("check subcommand") {
  RunResult pass = run("check --builtin M3 --theory konikowska");
  CHECK(pass.code == 0);
  CHECK(pass.out == "PASS\n");

  RunResult fail = run("check --builtin WK --id \"x*(x+y) = x\"");
  CHECK(fail.code == 1);
  CHECK(fail.out.find("FAIL") == 0);
  CHECK(fail.out.find("witness:") != std::string::npos);

  CHECK(run("check --builtin M3 --id \"x*1 = x\"").code == 0);
  CHECK(run("check --builtin M3 --quasi \"1 = 0 => x = y\"").code == 0);

  RunResult usage = run("check --builtin M3");
  CHECK(usage.code == 2);
  CHECK(usage.out.find("error:") != std::string::npos);

  CHECK(run("check --builtin NOPE --id \"x = x\"").code == 2);
  CHECK(run("check --builtin M3 --id \"x* = x\"").code == 2);
}

TEST_CASE("spectrum subcommand") {
  RunResult r = run("spectrum --theory mccarthy --max 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("n,count,seconds\n") == 0);
  CHECK(r.out.find("\n5,1,") != std::string::npos);

  CHECK(run("spectrum --theory nope --max 3").code == 2);
  CHECK(run("--budget-seconds 0 spectrum --theory uband --max 6").code == 3);
}

TEST_CASE("enumerate writes one file per model") {
  auto dir = scratch() / "models";
  std::filesystem::remove_all(dir);
  RunResult r = run("enumerate --theory mccarthy --size 4 --out "
                    + dir.string());
  CHECK(r.code == 0);
  int count = 0;
  for (auto const& e : std::filesystem::directory_iterator(dir)) {
    ++count;
    CHECK(e.path().extension() == ".alg");
  }
  CHECK(count == 2);
  CHECK(std::filesystem::exists(dir / "mccarthy_4_0.alg"));
}

TEST_CASE("decompose prints skeleton, fibers and transitions") {
  RunResult r = run("decompose --builtin M3");
  CHECK(r.code == 0);
  CHECK(r.out.find("skeleton: 0 \xce\xb5") != std::string::npos);
  CHECK(r.out.find("fiber 0: bounds=[0,1] elems={0,1}") != std::string::npos);
  CHECK(r.out.find("elems={\xce\xb5}") != std::string::npos);
  CHECK(r.out.find("p_{0,\xce\xb5}") != std::string::npos);

  CHECK(run("decompose --builtin WK").code == 2);
}

TEST_CASE("poset, reconstruct and iso round trip") {
  auto dir = scratch();
  auto poset_path = dir / "m3.poset";
  auto dot_path = dir / "m3.dot";
  RunResult p = run("poset --builtin M3 --out " + poset_path.string()
                    + " --dot " + dot_path.string());
  CHECK(p.code == 0);
  std::ifstream dot(dot_path);
  std::string dot_text((std::istreambuf_iterator<char>(dot)),
                       std::istreambuf_iterator<char>());
  CHECK(dot_text.find("digraph") == 0);

  auto alg_path = dir / "m3_back.alg";
  RunResult rec = run("reconstruct --poset " + poset_path.string() + " --out "
                      + alg_path.string());
  CHECK(rec.code == 0);

  RunResult iso = run("iso --file " + alg_path.string() + " --with M3");
  CHECK(iso.code == 0);
  CHECK(iso.out.find("ISOMORPHIC") == 0);

  RunResult niso = run("iso --file " + alg_path.string() + " --with M3OP");
  CHECK(niso.code == 1);
  CHECK(niso.out.find("NOT-ISOMORPHIC") == 0);
}

TEST_CASE("build-sl2 with and without the adjoined top") {
  auto dir = scratch();
  auto sl_path = dir / "point.sl";
  write_file(sl_path, "semilattice point\nsize 1\nbottom 0\njoin\n0\n");

  auto eps_path = dir / "eps.alg";
  RunResult b = run("build-sl2 --semilattice " + sl_path.string()
                    + " --adjoin-top --out " + eps_path.string());
  CHECK(b.code == 0);
  RunResult iso = run("iso --file " + eps_path.string() + " --with M3");
  CHECK(iso.code == 0);
  CHECK(iso.out.find("ISOMORPHIC") == 0);

  auto plain_path = dir / "plain.alg";
  CHECK(run("build-sl2 --semilattice " + sl_path.string() + " --out "
            + plain_path.string())
            .code
        == 0);
  RunResult iso2 = run("iso --file " + plain_path.string() + " --with 2");
  CHECK(iso2.code == 0);
}

TEST_CASE("si prints the verdict and the monolith") {
  RunResult m3 = run("si --builtin M3");
  CHECK(m3.code == 0);
  CHECK(m3.out.find("SI monolith=") == 0);
  CHECK(m3.out.find("blockids=") != std::string::npos);

  RunResult wk = run("si --builtin WK");
  CHECK(wk.code == 0);
  CHECK(wk.out == "SI monolith={0,1} {2} blockids=0,0,1\n");

  RunResult triv = run("si --builtin TRIVIAL");
  CHECK(triv.code == 0);
  CHECK(triv.out.find("NOT-SI") == 0);
}

TEST_CASE("scan-order reports emptiness") {
  RunResult r = run("scan-order --max 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("OK") == 0);
}

TEST_CASE("malformed files produce one-line errors and exit 2") {
  auto dir = scratch();
  auto bad = dir / "bad.alg";
  write_file(bad, "algebra broken\nsize 2\nunit 0\ninv 0 1\nmul\n0 1\n1 0\n");
  RunResult r = run("check --file " + bad.string() + " --id \"x = x\"");
  CHECK(r.code == 2);
  CHECK(r.out.find("error:") == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
}
