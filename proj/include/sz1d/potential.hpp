#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sz1d/errors.hpp"
#include "sz1d/units.hpp"

namespace sz1d {

// alpha * delta(x - location); strength carries energy*length units.
struct DeltaSpike {
  double location = 0.0;
  double strength = 0.0;
};

// A real potential with declared asymptotic values on a finite truncation
// interval. Delta spikes and jump discontinuities are first-class: the
// engine splices its integration at those points instead of smoothing them.
struct Potential {
  std::function<double(double)> v;
  std::function<double(double)> dv;  // optional analytic dV/dx
  double v_minus_inf = 0.0;
  double v_plus_inf = 0.0;
  double x_lo = -10.0;
  double x_hi = 10.0;
  double tail_tolerance = 1e-10;
  std::vector<DeltaSpike> spikes;      // sorted, strictly inside (x_lo, x_hi)
  std::vector<double> breakpoints;     // discontinuities of v or v'
  std::string name = "custom";

  double operator()(double x) const { return v(x); }

  bool symmetric_asymptotes() const {
    const double scale = std::max({1.0, std::abs(v_minus_inf), std::abs(v_plus_inf)});
    return std::abs(v_minus_inf - v_plus_inf) <= 1e-12 * scale;
  }

  // x_lo, spikes and breakpoints, x_hi -- ascending. Integration and
  // quadrature run segment by segment between consecutive entries.
  std::vector<double> splice_points() const;

  // dV/dx: analytic when supplied, else a central difference at step 1e-5
  // kept inside (lo, hi) so stencils never straddle a splice point.
  double derivative(double x, double lo, double hi) const;
  double derivative(double x) const { return derivative(x, x_lo, x_hi); }
};

enum class ExtremumKind { peak, valley };

struct ExtremumPoint {
  double position = 0.0;
  double k_value = 0.0;       // k at the extremum
  ExtremumKind kind = ExtremumKind::peak;  // of k(x); a V-peak is a k-valley
};

// Alternating extrema of k(x) plus the asymptotic wavenumbers.
struct ExtremaProfile {
  std::vector<ExtremumPoint> entries;
  double k_minus_inf = 0.0;
  double k_plus_inf = 0.0;
};

// sqrt(2m(E - V(x)))/hbar; TurningPoint when E < V(x).
double wavenumber(const Potential& pot, const UnitsConfig& units, double E,
                  double x);

// (k at -inf, k at +inf); NoPropagatingMode when E <= either asymptote.
std::pair<double, double> asymptotic_wavenumbers(const Potential& pot,
                                                 const UnitsConfig& units,
                                                 double E);

// Grid scan (default 4096 points) + golden-section refinement of the k(x)
// extrema; jump discontinuities contribute extrema at the breakpoint itself.
ExtremaProfile find_extrema(const Potential& pot, const UnitsConfig& units,
                            double E, std::size_t grid_points = 4096);

// integral |V - v_ref| dx over the truncation interval plus sum |strength|
// over delta spikes. NonDecayingTail unless |V - v_ref| <= tail_tolerance at
// both truncation points.
double l1_shifted_norm(const Potential& pot, double v_ref);

// Asymptotic-flatness check against the declared v(+-inf).
bool tails_ok(const Potential& pot);
void require_tails(const Potential& pot);

// Scan minimum/maximum of V over the interval (grid + splice-point aware).
std::pair<double, double> scan_v_range(const Potential& pot,
                                       std::size_t grid_points = 2048);

}  // namespace sz1d
