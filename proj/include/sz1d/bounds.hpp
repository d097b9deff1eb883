#pragma once

#include <atomic>
#include <string>

#include "sz1d/phase.hpp"
#include "sz1d/potential.hpp"

#include <json.hpp>

namespace sz1d {

enum class BoundFamily {
  general,      // cosh/sinh of the full vartheta line integral
  case1,        // constant-k phase, theta = m Int|V - Vinf| / (hbar^2 k_inf)
  case1_weak,   // T >= 1 - theta^2, R <= theta^2 (clamped, may be vacuous)
  case2,        // WKB phase, theta = 1/2 Int |k'|/k
  case2a,       // monotonic potential: step-function caps
  case2b,       // single extremum, symmetric asymptotes
  case2b_asym,  // single extremum, general asymptotes
  case2c,       // alternating extrema products
};

std::string_view bound_family_name(BoundFamily f);
BoundFamily bound_family_from_name(std::string_view name);

enum class BoundValidity { valid, vacuous };

// A bound family evaluated at one energy: theta integral plus the caps it
// implies. For every family except case1_weak:
//   alpha_cap = cosh theta, beta_cap = sinh theta,
//   T_floor = sech^2 theta, R_cap = tanh^2 theta.
// case1_weak keeps the rigorous cosh/sinh caps but carries the weaker
// (analytically simpler) T/R pair, clamped into [0,1] and flagged vacuous
// when it constrains nothing.
struct BoundReport {
  BoundFamily family = BoundFamily::general;
  double theta = 0.0;
  double alpha_cap = 1.0;
  double beta_cap = 0.0;
  double T_floor = 1.0;
  double R_cap = 0.0;
  BoundValidity validity = BoundValidity::valid;
};

void to_json(nlohmann::json& j, const BoundReport& r);

// sqrt(phi''^2 + (k^2 - phi'^2)^2) / (2 |phi'|)
double vartheta(double dphi, double ddphi, double ksq);

// Quadrature of vartheta along the domain under the chosen phase. Under the
// constant-k phase delta spikes contribute m|s|/(hbar^2 k_inf) each.
BoundReport general_bound(const Potential& pot, const UnitsConfig& units,
                          double E, PhaseVariant phase);

struct Case1Bounds {
  BoundReport strong;
  BoundReport weak;
};

// Symmetric asymptotes required. theta = sqrt(m/(2(E-Vinf))) I / hbar with
// I = Int |V - Vinf| dx (+ spike strengths).
Case1Bounds case1_bound(const Potential& pot, const UnitsConfig& units,
                        double E);

// WKB-phase theta = 1/2 Int |k'|/|k| dx; jump discontinuities contribute
// 1/2 |ln(k_right/k_left)| each.
BoundReport case2_bound(const Potential& pot, const UnitsConfig& units,
                        double E);

// Step-function caps for a monotonic potential.
BoundReport monotonic_bound(double k_minus, double k_plus);

// Single-extremum caps; symmetric asymptotes reduce to the (E, V) forms.
BoundReport single_extremum_bound(double k_minus, double k_plus,
                                  double k_extremum);

// Alternating peak/valley products; reduces to the two bounds above for
// profiles with one or zero extrema.
BoundReport multi_extrema_bound(const ExtremaProfile& profile);

namespace detail {
// Verification mutation fixture: makes vartheta under-estimate so the
// dominance suite must catch it. Never set outside `verify`.
extern std::atomic<bool> vartheta_sign_bug;
}  // namespace detail

}  // namespace sz1d
