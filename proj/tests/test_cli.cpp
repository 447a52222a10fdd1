#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "mtfa/grid.hpp"
#include "mtfa/io.hpp"
#include "mtfa/symplectic.hpp"

using namespace mtfa;

namespace {
std::string g_cli;       // path to the mtfa binary
std::string g_test_dir;  // directory holding mock_tensor_box.py

int run(const std::string& args) {
  std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  std::string path;
  TempDir() {
    char tmpl[] = "/tmp/mtfa_cli_test_XXXXXX";
    path = mkdtemp(tmpl);
  }
};
}  // namespace

TEST_CASE("compute wigner of the bundled gaussian") {
  TempDir td;
  Grid g = Grid::line(64);
  write_field_csv(td.path + "/h0.csv", gaussian(g));
  CHECK(run("compute --kind wigner --f " + td.path + "/h0.csv --g " + td.path +
            "/h0.csv --out " + td.path + "/w.csv") == 0);
  Field w = read_field_csv(td.path + "/w.csv");
  REQUIRE(w.grid.vars == 2);
  CHECK(std::abs(w.at(g.n / 2, g.n / 2) - cplx(2.0)) < 1e-7);
}

TEST_CASE("compute a-wigner with the identity matrix is the tensor product") {
  TempDir td;
  Grid g = Grid::line(64);
  Field f = hermite(1, g), h = hermite(2, g);
  write_field_csv(td.path + "/f.csv", f);
  write_field_csv(td.path + "/g.csv", h);
  write_matrix_csv(td.path + "/id.csv", Mat::Identity(4, 4));
  CHECK(run("compute --kind a-wigner --matrix " + td.path + "/id.csv --f " + td.path +
            "/f.csv --g " + td.path + "/g.csv --out " + td.path + "/t.csv") == 0);
  Field t = read_field_csv(td.path + "/t.csv");
  CHECK(l2_distance(t, tensor_product(f, h)) < 1e-12);
}

TEST_CASE("exit codes: parse and dimension errors") {
  TempDir td;
  {
    std::ofstream os(td.path + "/bad.csv");
    os << "# field vars=1 N=64\n0,1.0\n";  // malformed row
  }
  Grid g = Grid::line(64);
  write_field_csv(td.path + "/ok.csv", gaussian(g));
  CHECK(run("compute --kind wigner --f " + td.path + "/bad.csv --g " + td.path +
            "/ok.csv --out " + td.path + "/w.csv") == 2);

  write_field_csv(td.path + "/small.csv", gaussian(Grid::line(32)));
  CHECK(run("compute --kind wigner --f " + td.path + "/ok.csv --g " + td.path +
            "/small.csv --out " + td.path + "/w.csv") == 3);
}

TEST_CASE("verify suite passes, tampered cocycle fails") {
  TempDir td;
  CHECK(run("verify --suite shifts --n 64 --seed 5 --out " + td.path + "/r.json") == 0);
  auto j = nlohmann::json::parse(slurp(td.path + "/r.json"));
  CHECK(j["pass"].get<bool>());
  for (const auto& c : j["checks"]) CHECK(c["residual"].get<double>() <= c["threshold"].get<double>());
  CHECK(run("verify --suite shifts --n 64 --seed 5 --inject-phase-error") == 1);
}

TEST_CASE("probe the builtin wigner") {
  TempDir td;
  CHECK(run("probe --target wigner --n 64 --no-timestamp --out " + td.path + "/p.json") == 0);
  auto j = nlohmann::json::parse(slurp(td.path + "/p.json"));
  CHECK(j["verdict"]["pass"].get<bool>());
  Mat expected = expected_phi_wigner(Mode::sesquilinear);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(j["phi"]["matrix"][i][k].get<double>() - expected(i, k)) < 1e-3);
}

TEST_CASE("probe a seeded a-wigner matrix round trip") {
  TempDir td;
  SymplecticMatrix a0 = random_tame_symplectic(21, 2, 3);
  write_matrix_csv(td.path + "/a.csv", a0.entries);
  CHECK(run("probe --target a-wigner:" + td.path + "/a.csv --n 64 --no-timestamp --out " +
            td.path + "/p.json") == 0);
  auto j = nlohmann::json::parse(slurp(td.path + "/p.json"));
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(j["field_matrix"][i][k].get<double>() - a0.entries(i, k)) < 1e-3);
}

TEST_CASE("probe negative control exits nonzero") {
  CHECK(run("probe --target control:nonlinear-phi --n 64 --no-timestamp") == 1);
}

TEST_CASE("probe an external representation over the line protocol") {
  TempDir td;
  CHECK(run("probe --target exec:\"python3 " + g_test_dir + "/mock_tensor_box.py\" --n 64"
            " --no-timestamp --out " + td.path + "/p.json") == 0);
  auto j = nlohmann::json::parse(slurp(td.path + "/p.json"));
  CHECK(j["verdict"]["pass"].get<bool>());
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      double expect = i == k ? 1.0 : 0.0;
      CHECK(std::abs(j["field_matrix"][i][k].get<double>() - expect) < 1e-3);
    }
  CHECK(std::abs(j["a"]["re"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("probe reports are deterministic") {
  TempDir td;
  CHECK(run("probe --target wigner --n 64 --seed 3 --no-timestamp --out " + td.path +
            "/r1.json") == 0);
  CHECK(run("probe --target wigner --n 64 --seed 3 --no-timestamp --out " + td.path +
            "/r2.json") == 0);
  CHECK(slurp(td.path + "/r1.json") == slurp(td.path + "/r2.json"));
  CHECK(!slurp(td.path + "/r1.json").empty());
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  if (argc > 1) g_cli = argv[1];
  if (argc > 2) g_test_dir = argv[2];
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli <mtfa-binary> <tests-dir>\n");
    return 1;
  }
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
