#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mtfa {

// One verified identity: the worst residual observed and the threshold it
// must stay under.
struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass() const { return residual <= threshold; }
};

bool all_pass(const std::vector<Check>& checks);

// Invariant suites. Thresholds are pinned inside (tol_scale > 1 relaxes them
// uniformly for exploratory CLI runs; tests and acceptance use 1).
std::vector<Check> verify_shifts(int n, std::uint64_t seed, bool inject_phase_error = false);
std::vector<Check> verify_metaplectic(int n, std::uint64_t seed);
std::vector<Check> verify_wigner_covariance(int n, std::uint64_t seed);

// Theorem engine checks (acceptance criteria 7-9).
std::vector<Check> verify_theorem_roundtrip(int n, std::uint64_t seed, int num_seeds);
std::vector<Check> verify_wigner_phi_recovery(int n);
std::vector<Check> verify_falsifiability(int n);

}  // namespace mtfa
