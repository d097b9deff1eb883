#pragma once

#include <complex>
#include <string>

#include "sz1d/potential.hpp"
#include "sz1d/units.hpp"

namespace sz1d {

enum class BetaMethod { born, distorted_born, above_barrier };

std::string_view beta_method_name(BetaMethod m);

// Perturbative estimate of the reflection Bogolubov coefficient, in the same
// backward-Jost, plane-wave-anchored convention as the engine (so complex
// differences against integrate().beta are meaningful).
struct BetaEstimate {
  BetaMethod method = BetaMethod::born;
  std::complex<double> beta{0.0, 0.0};
  double magnitude = 0.0;
};

// beta ~= -(i m / hbar^2 k_inf) Int (V - Vinf) e^{+2 i k_inf x} dx, spikes
// contributing strength * e^{2 i k_inf x0}. Requires symmetric asymptotes.
BetaEstimate born_beta(const Potential& pot, const UnitsConfig& units,
                       double E);

// Phase-dressed version: the integrand carries e^{-i Phi(x)} with
// Phi(x) = (m / hbar^2 k_inf) Int_{x_lo}^x (V - Vinf) dy, accumulated
// alongside the outer quadrature. Across a spike the inner phase is held
// constant; the jump applies after it.
BetaEstimate distorted_born_beta(const Potential& pot,
                                 const UnitsConfig& units, double E);

// beta ~= -1/2 Int (k'/k) e^{+2 i phi(x)} dx under the WKB phase, inner
// phase co-integrated. Requires E above the potential everywhere.
BetaEstimate above_barrier_beta(const Potential& pot,
                                const UnitsConfig& units, double E);

}  // namespace sz1d
