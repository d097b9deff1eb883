#pragma once

#include <cmath>

#include "sz1d/potential.hpp"
#include "sz1d/units.hpp"

namespace sz1d {

enum class PhaseVariant { constant_k, wkb };

// Auxiliary phase phi(x) defining the co-moving wave basis. Two variants:
//   constant_k: phi = k_inf x (requires symmetric asymptotes, E > V_inf)
//   wkb:        phi' = k(x)   (requires E above the barrier everywhere)
// The engine co-integrates phi for the WKB variant; the accessors here are
// the reference definitions used by bounds and tests. phi is anchored so
// that phi(x_hi) = k(+inf) * x_hi in both variants.
class PhaseFunction {
 public:
  static PhaseFunction constant_k(const Potential& pot,
                                  const UnitsConfig& units, double E);
  static PhaseFunction wkb(const Potential& pot, const UnitsConfig& units,
                           double E);
  static PhaseFunction make(PhaseVariant variant, const Potential& pot,
                            const UnitsConfig& units, double E) {
    return variant == PhaseVariant::constant_k ? constant_k(pot, units, E)
                                               : wkb(pot, units, E);
  }

  PhaseVariant variant() const { return variant_; }
  double k_minus_inf() const { return k_minus_; }
  double k_plus_inf() const { return k_plus_; }
  double energy() const { return energy_; }

  double phi(double x) const;
  double dphi(double x) const;
  double ddphi(double x) const;

 private:
  PhaseFunction(PhaseVariant v, Potential pot, UnitsConfig units, double E);

  PhaseVariant variant_;
  Potential pot_;
  UnitsConfig units_;
  double energy_;
  double k_minus_ = 0.0;
  double k_plus_ = 0.0;
};

}  // namespace sz1d
