#include "sz1d/parametric.hpp"

#include <cmath>

namespace sz1d {

ScatteringProblem to_scattering(const FrequencyProfile& profile,
                                const UnitsConfig& units) {
  units.validate();
  if (!(profile.omega_minus_inf > 0.0) || !(profile.omega_plus_inf > 0.0))
    fail(ErrorCode::no_propagating_mode,
         "asymptotic frequencies must be positive", "profile=" + profile.name);

  const double scale = units.hbar * units.hbar / (2.0 * units.mass);
  ScatteringProblem problem;
  problem.energy = 0.0;
  Potential& pot = problem.potential;
  auto omega = profile.omega;
  pot.v = [omega, scale, name = profile.name](double t) {
    const double w = omega(t);
    if (!(w > 0.0))
      fail(ErrorCode::turning_point, "omega(t) must stay positive",
           "profile=" + name + " t=" + std::to_string(t));
    return -scale * w * w;
  };
  if (profile.domega) {
    auto dw = profile.domega;
    pot.dv = [omega, dw, scale](double t) {
      return -2.0 * scale * omega(t) * dw(t);
    };
  }
  pot.v_minus_inf = -scale * profile.omega_minus_inf * profile.omega_minus_inf;
  pot.v_plus_inf = -scale * profile.omega_plus_inf * profile.omega_plus_inf;
  pot.x_lo = profile.t_lo;
  pot.x_hi = profile.t_hi;
  // tail tolerance transported through V = -scale * omega^2:
  // dV = 2 scale omega domega
  const double w_ref =
      std::max(profile.omega_minus_inf, profile.omega_plus_inf);
  pot.tail_tolerance =
      std::max(2.0 * scale * w_ref * profile.tail_tolerance, 1e-14);
  pot.name = "frequency:" + profile.name;
  return problem;
}

BoundReport parametric_bounds(const FrequencyProfile& profile,
                              ParametricCase which, const UnitsConfig& units) {
  const ScatteringProblem problem = to_scattering(profile, units);
  const Potential& pot = problem.potential;
  const double E = problem.energy;

  switch (which) {
    case ParametricCase::case1: {
      // omega(-inf) = omega0 = omega(+inf) != 0 required;
      // theta = (1/2 omega0) Int |omega^2 - omega0^2| dt
      return case1_bound(pot, units, E).strong;
    }
    case ParametricCase::case2:
      return case2_bound(pot, units, E);
    case ParametricCase::case2a:
      return monotonic_bound(profile.omega_minus_inf, profile.omega_plus_inf);
    case ParametricCase::case2b:
    case ParametricCase::case2b_asym: {
      const auto extrema = find_extrema(pot, units, E);
      if (extrema.entries.size() != 1)
        fail(ErrorCode::non_alternating_profile,
             "single-extremum case requires exactly one omega extremum",
             "profile=" + profile.name + " extrema=" +
                 std::to_string(extrema.entries.size()));
      if (which == ParametricCase::case2b &&
          std::abs(profile.omega_minus_inf - profile.omega_plus_inf) >
              1e-12 * profile.omega_minus_inf)
        fail(ErrorCode::asymmetric_asymptotes,
             "case 2-b requires omega(-inf) == omega(+inf)");
      return single_extremum_bound(profile.omega_minus_inf,
                                   profile.omega_plus_inf,
                                   extrema.entries.front().k_value);
    }
    case ParametricCase::case2c:
      return multi_extrema_bound(find_extrema(pot, units, E));
  }
  fail(ErrorCode::invalid_config, "unknown parametric case");
}

ParametricResult evolve(const FrequencyProfile& profile,
                        const UnitsConfig& units,
                        const IntegratorOptions& opts) {
  const ScatteringProblem problem = to_scattering(profile, units);
  ParametricResult out;
  out.scattering = integrate(problem.potential, units, problem.energy,
                             PhaseVariant::wkb, opts);
  out.n_quanta = std::norm(out.scattering.beta);
  return out;
}

}  // namespace sz1d
