#pragma once

#include <cmath>

#include "sz1d/errors.hpp"

namespace sz1d {

// Unit system for the Schrodinger equation. The default hbar = 1, m = 1/2
// gives k^2 = E - V, which keeps test values free of constant clutter while
// leaving every closed form checkable with explicit hbar and m.
struct UnitsConfig {
  double hbar = 1.0;
  double mass = 0.5;

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0))
      fail(ErrorCode::invalid_config, "hbar and mass must be strictly positive");
  }
};

// k(x)^2 = 2m(E - V)/hbar^2; may be negative (caller decides what that means).
inline double wavenumber_squared(const UnitsConfig& u, double E, double V) {
  return 2.0 * u.mass * (E - V) / (u.hbar * u.hbar);
}

}  // namespace sz1d
