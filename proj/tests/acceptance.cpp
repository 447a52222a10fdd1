// Acceptance suite: runs every certification criterion at its pinned
// tolerance and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria. argv[1] must point at the mtfa CLI binary
// (used by the determinism criterion).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mtfa/verify.hpp"

namespace {

int g_failures = 0;

void report(int number, const std::string& title, const std::vector<mtfa::Check>& checks) {
  bool ok = mtfa::all_pass(checks);
  if (!ok) ++g_failures;
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", number, title.c_str());
  for (const auto& c : checks)
    std::printf("        %-38s residual %.3e  threshold %.3e%s\n", c.name.c_str(), c.residual,
                c.threshold, c.pass() ? "" : "  <-- FAIL");
  std::fflush(stdout);
}

std::vector<mtfa::Check> pick(const std::vector<mtfa::Check>& all,
                              const std::vector<std::string>& names) {
  std::vector<mtfa::Check> out;
  for (const auto& n : names)
    for (const auto& c : all)
      if (c.name == n) out.push_back(c);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "./mtfa";
  const std::uint64_t seed = 2025;

  auto shifts = mtfa::verify_shifts(128, seed);
  report(1, "Weyl composition law, 200 random pairs at N=128",
         pick(shifts, {"weyl_composition_law"}));
  report(2, "powers and inverses of the shift representation",
         pick(shifts, {"rho_power_rho_of_n_lambda", "rho_inverse_identity"}));

  auto meta = mtfa::verify_metaplectic(128, seed);
  report(3, "Stone-von Neumann intertwining, 50 in D=1 and 20 in D=2",
         pick(meta, {"intertwining_d1", "intertwining_d2"}));

  {
    auto w64 = mtfa::verify_wigner_covariance(64, seed);
    auto w128 = mtfa::verify_wigner_covariance(128, seed);
    std::vector<mtfa::Check> c4 = pick(
        w64, {"wigner_fast_vs_direct", "gaussian_closed_form_fast", "gaussian_closed_form_direct"});
    for (auto& c : c4) c.name += "_n64";
    auto more = pick(w128, {"wigner_fast_vs_direct", "gaussian_closed_form_fast",
                            "gaussian_closed_form_direct"});
    for (auto& c : more) c.name += "_n128";
    c4.insert(c4.end(), more.begin(), more.end());
    report(4, "Wigner oracle agreement and Gaussian closed form, N=64 and N=128", c4);
    report(5, "covariance identities with exact phases, 50 random shift pairs",
           pick(w128, {"covariance_n4", "covariance_n2_exact_phase"}));
    report(6, "Moyal isometry for Wigner and 10 random metaplectic representations",
           pick(w128, {"moyal_isometry_wigner", "moyal_isometry_a_wigner"}));
  }

  report(7, "theorem round trip: 10 synthetic representations",
         mtfa::verify_theorem_roundtrip(128, seed, 10));
  report(8, "Wigner intertwining-map recovery", mtfa::verify_wigner_phi_recovery(128));
  report(9, "falsifiability: controls fail, pure representations pass",
         mtfa::verify_falsifiability(64));

  {
    // criterion 10: byte-identical probe reports under a fixed seed
    char tmpl[] = "/tmp/mtfa_acceptance_XXXXXX";
    std::string dir = mkdtemp(tmpl);
    std::string base = cli + " probe --target wigner --n 64 --seed 7 --no-timestamp --out ";
    int rc1 = std::system((base + dir + "/r1.json >/dev/null 2>&1").c_str());
    int rc2 = std::system((base + dir + "/r2.json >/dev/null 2>&1").c_str());
    std::string r1 = slurp(dir + "/r1.json"), r2 = slurp(dir + "/r2.json");
    bool ok = WEXITSTATUS(rc1) == 0 && WEXITSTATUS(rc2) == 0 && !r1.empty() && r1 == r2;
    std::vector<mtfa::Check> c10 = {{"byte_identical_reports", ok ? 0.0 : 1.0, 0.5}};
    report(10, "determinism of cmd_probe reports", c10);
  }

  std::printf("%s: %d criterion failure(s)\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures;
}
