#pragma once

#include <functional>
#include <string>

#include "sz1d/bounds.hpp"
#include "sz1d/engine.hpp"
#include "sz1d/potential.hpp"

namespace sz1d {

// omega(t) profile of a parametrically excited oscillator
// phi'' + omega(t)^2 phi = 0, asymptotically flat at both ends.
struct FrequencyProfile {
  std::function<double(double)> omega;
  std::function<double(double)> domega;  // optional
  double omega_minus_inf = 1.0;
  double omega_plus_inf = 1.0;
  double t_lo = -10.0;
  double t_hi = 10.0;
  double tail_tolerance = 1e-10;
  std::string name = "profile";
};

// The t -> x, omega -> k identification: an equivalent scattering problem
// with V(x) = -(hbar^2/2m) omega(x)^2 at E = 0, so that k(x) = omega(x)
// exactly under any units.
struct ScatteringProblem {
  Potential potential;
  double energy = 0.0;
};

ScatteringProblem to_scattering(const FrequencyProfile& profile,
                                const UnitsConfig& units = {});

enum class ParametricCase { case1, case2, case2a, case2b, case2b_asym, case2c };

// Bound families of the oscillator problem, evaluated by mapping onto the
// scattering bounds with omega substituted for k.
BoundReport parametric_bounds(const FrequencyProfile& profile,
                              ParametricCase which,
                              const UnitsConfig& units = {});

struct ParametricResult {
  ScatteringResult scattering;
  double n_quanta = 0.0;  // |beta|^2, produced quanta per mode
};

// Evolves the profile with the WKB phase of the mapped problem.
ParametricResult evolve(const FrequencyProfile& profile,
                        const UnitsConfig& units = {},
                        const IntegratorOptions& opts = {});

}  // namespace sz1d
