#include "sz1d/phase.hpp"

#include <cmath>

#include "sz1d/quadrature.hpp"

namespace sz1d {

PhaseFunction::PhaseFunction(PhaseVariant v, Potential pot, UnitsConfig units,
                             double E)
    : variant_(v), pot_(std::move(pot)), units_(units), energy_(E) {
  units_.validate();
  auto [km, kp] = asymptotic_wavenumbers(pot_, units_, E);
  k_minus_ = km;
  k_plus_ = kp;
}

PhaseFunction PhaseFunction::constant_k(const Potential& pot,
                                        const UnitsConfig& units, double E) {
  if (!pot.symmetric_asymptotes())
    fail(ErrorCode::asymmetric_asymptotes,
         "constant-k phase requires V(-inf) == V(+inf)",
         "potential=" + pot.name);
  return PhaseFunction(PhaseVariant::constant_k, pot, units, E);
}

PhaseFunction PhaseFunction::wkb(const Potential& pot,
                                 const UnitsConfig& units, double E) {
  const auto [vmin, vmax] = scan_v_range(pot);
  (void)vmin;
  if (E <= vmax)
    fail(ErrorCode::turning_point,
         "WKB phase requires E above the potential everywhere",
         "max V=" + std::to_string(vmax) + " E=" + std::to_string(E));
  if (!pot.spikes.empty())
    fail(ErrorCode::unsupported,
         "WKB phase is undefined across a delta spike", "potential=" + pot.name);
  return PhaseFunction(PhaseVariant::wkb, pot, units, E);
}

double PhaseFunction::dphi(double x) const {
  if (variant_ == PhaseVariant::constant_k) return k_minus_;
  return wavenumber(pot_, units_, energy_, x);
}

double PhaseFunction::ddphi(double x) const {
  if (variant_ == PhaseVariant::constant_k) return 0.0;
  const double k = wavenumber(pot_, units_, energy_, x);
  if (k == 0.0)
    fail(ErrorCode::phase_derivative_zero, "phi'(x) vanished",
         "x=" + std::to_string(x));
  return -units_.mass * pot_.derivative(x) / (units_.hbar * units_.hbar * k);
}

double PhaseFunction::phi(double x) const {
  if (variant_ == PhaseVariant::constant_k) return k_minus_ * x;
  // anchored at phi(x_hi) = k(+inf) x_hi
  const double tail = adaptive_quadrature(
      [this](double y) { return wavenumber(pot_, units_, energy_, y); }, x,
      pot_.x_hi, 1e-12, 1e-14);
  return k_plus_ * pot_.x_hi - tail;
}

}  // namespace sz1d
