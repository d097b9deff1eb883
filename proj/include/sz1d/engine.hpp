#pragma once

#include <complex>
#include <vector>

#include "sz1d/phase.hpp"
#include "sz1d/potential.hpp"
#include "sz1d/units.hpp"

namespace sz1d {

using Complex = std::complex<double>;

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  // hard cap; the engine additionally clamps to pi/(10 k_max) because the
  // source terms oscillate at twice the local wavenumber
  double max_step = 0.1;
  std::size_t max_steps = 20'000'000;
};

// Position-dependent Bogolubov pair relative to the auxiliary phase.
struct BogolubovState {
  double x = 0.0;
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
};

// Trace record: state plus the co-integrated phase, enough to reconstruct
// psi and psi' at the sample.
struct TracedState {
  double x = 0.0;
  Complex a, b;
  double phi = 0.0;
  double dphi = 0.0;
  double conservation_residual = 0.0;
};

struct ScatteringResult {
  Complex alpha{1.0, 0.0};   // plane-wave referenced at x_lo
  Complex beta{0.0, 0.0};
  double T = 1.0;
  double R = 0.0;
  double conservation_residual = 0.0;  // max | |a|^2 - |b|^2 - 1 |
  double error_estimate = 0.0;         // coarse global bound ~ steps * rel_tol
  PhaseVariant phase = PhaseVariant::constant_k;
  double energy = 0.0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

// 2x2 complex matrix propagating (a, b) between positions. For any real
// phase it has the conjugate structure [[p, q], [q*, p*]], unit determinant,
// and preserves the SU(1,1) metric sigma_z.
struct TransferMatrix {
  Complex m[2][2] = {{{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}};

  Complex det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  // max-norm residual of E^dagger sigma_z E - sigma_z
  double su11_residual() const;
  // max-norm residual of the [[p, q], [q*, p*]] structure
  double conjugate_structure_residual() const;
  TransferMatrix operator*(const TransferMatrix& rhs) const;
  void apply(Complex& a, Complex& b) const;
};

// Shabat-Zakharov right-hand side: derivatives of (a, b) given the phase
// data and k^2 at the point. The building block of everything below.
std::pair<Complex, Complex> sz_derivatives(const Complex& a, const Complex& b,
                                           double phi, double dphi,
                                           double ddphi, double ksq);

// Convenience wrapper taking the phase by accessor object.
std::pair<Complex, Complex> sz_rhs(const BogolubovState& state,
                                   const PhaseFunction& phase, double ksq);

// Integrates the Jost terminal data (a, b) = (1, 0) from x_hi down to x_lo
// and reads off alpha, beta (re-anchored onto plane waves at x_lo). Delta
// spikes and jump discontinuities are handled by exact interface matching.
ScatteringResult integrate(const Potential& pot, const UnitsConfig& units,
                           double E, PhaseVariant phase,
                           const IntegratorOptions& opts = {});

// As integrate(), also recording the state at every accepted step, or at
// the given ascending positions when sample_at is non-null.
ScatteringResult integrate_traced(const Potential& pot,
                                  const UnitsConfig& units, double E,
                                  PhaseVariant phase,
                                  std::vector<TracedState>& trace,
                                  const std::vector<double>* sample_at = nullptr,
                                  const IntegratorOptions& opts = {});

// Matrix mapping (a, b) at x_i to (a, b) at x_f, computed columnwise. The
// full-line matrix transfer_matrix(pot, ..., x_hi, x_lo) realizes
// [[alpha, beta*], [beta, alpha*]] in the co-moving basis.
TransferMatrix transfer_matrix(const Potential& pot, const UnitsConfig& units,
                               double E, PhaseVariant phase, double x_i,
                               double x_f, const IntegratorOptions& opts = {});

struct WaveSample {
  double x = 0.0;
  Complex psi, dpsi;
};

// psi = (a e^{+i phi} + b e^{-i phi})/sqrt(phi'),
// psi' = i sqrt(phi') (a e^{+i phi} - b e^{-i phi})
std::vector<WaveSample> reconstruct_wavefunction(
    const std::vector<TracedState>& states);

}  // namespace sz1d
