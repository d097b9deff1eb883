#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sz1d/potential.hpp"
#include "sz1d/units.hpp"

namespace sz1d {

// Closed-form transmission results for solvable potentials, used as oracles
// for the numerical engine and as saturation test beds for the bounds.
//
// Two transcription errata (confirmed against independent high-accuracy ODE
// integration, see README) are shipped in corrected form:
//   * delta spike:   T = 1/(1 + m a^2/(2 hbar^2 E))   [hbar^2, not hbar]
//   * tanh step:     sinh[(pi/2)(k- -+ k+) L] ratio   [pi/2, not 2 pi]

using ParamMap = std::map<std::string, double>;

struct ParamSpec {
  std::string name;
  double default_value;
  std::string doc;
};

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::function<Potential(const ParamMap&)> make_potential;
  std::function<double(const ParamMap&, double, const UnitsConfig&)> exact_T;
  // empty optional = (E, params) inside the validity region
  std::function<std::optional<std::string>(const ParamMap&, double,
                                           const UnitsConfig&)>
      invalid_reason;
  // energy grid spanning the validity region, for sweeps and verification
  std::function<std::pair<double, double>(const ParamMap&)> energy_window;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);

// V = strength * delta(x)
double delta_T(double strength, double E, const UnitsConfig& units);

// V = strength * [delta(x - L/2) + delta(x + L/2)]
double double_delta_T(double strength, double L, double E,
                      const UnitsConfig& units);

// V = V_e on (-L/2, L/2), zero outside; over-barrier regime E > max(0, V_e)
double square_barrier_T(double V_e, double L, double E,
                        const UnitsConfig& units);

// V = (V- + V+)/2 + (V+ - V-)/2 * tanh(x/L); returns the reflection
// probability
double tanh_step_R(double V_minus, double V_plus, double L, double E,
                   const UnitsConfig& units);

// V = V_e sech^2(x/L); cos^2 -> cosh^2 continuation for 8 m V_e L^2 > hbar^2
double sech2_T(double V_e, double L, double E, const UnitsConfig& units);

// V = V1 (x < -L/2), V2 (-L/2 < x < L/2), V3 (x > L/2)
double asymmetric_well_T(double V1, double V2, double V3, double L, double E,
                         const UnitsConfig& units);

// V = V0 cosh^2(mu) [tanh((x - mu L)/L) + tanh(mu)]^2
double poschl_teller_T(double V0, double mu, double L, double E,
                       const UnitsConfig& units);

// Gaussian of integral `strength` and width sigma; tends to a delta spike as
// sigma -> 0 (used by the delta-limit convergence test).
Potential smoothed_delta_potential(double strength, double sigma,
                                   double center = 0.0);

// Helper shared by config loading and tests.
Potential make_catalog_potential(const std::string& name, const ParamMap& p);

}  // namespace sz1d
