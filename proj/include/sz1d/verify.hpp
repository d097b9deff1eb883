#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sz1d {

struct VerifyOptions {
  std::uint64_t seed = 20240817;
  double tol_scale = 1.0;          // scales the integrator tolerances
  bool inject_vartheta_bug = false;  // mutation fixture; must turn checks red
  unsigned workers = 0;            // 0 = SZ1D_WORKERS env or hardware
  int catalog_energies = 20;
  int random_potentials = 200;
  int energies_per_potential = 10;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // offending (potential, E, family) on failure
};

// Catalog-vs-engine, conservation, bound dominance, saturation and
// transfer-matrix algebra, printed one pass/fail line per check.
std::vector<CheckResult> run_verification(const VerifyOptions& options,
                                          std::ostream& out);

}  // namespace sz1d
