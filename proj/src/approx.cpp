#include "sz1d/approx.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sz1d/quadrature.hpp"

namespace sz1d {

namespace {

constexpr double kPi = 3.14159265358979323846;
using Complex = std::complex<double>;
const Complex kI{0.0, 1.0};

double nudge_inside(double x, double lo, double hi) {
  if (x <= lo) return std::nextafter(lo, hi);
  if (x >= hi) return std::nextafter(hi, lo);
  return x;
}

// Kronrod nodes and weights in ascending order over the panel, so inner
// phases can be accumulated left to right.
struct OrderedGk {
  double off[15];
  double w[15];
  OrderedGk() {
    for (int i = 0; i < 15; ++i) {
      const int idx = i < 7 ? i : 14 - i;
      off[i] = (i < 7 ? -1.0 : 1.0) * gk::nodes[idx];
      w[i] = gk::wk[idx];
    }
  }
};
const OrderedGk ordered_gk;

}  // namespace

std::string_view beta_method_name(BetaMethod m) {
  switch (m) {
    case BetaMethod::born: return "Born";
    case BetaMethod::distorted_born: return "DistortedBorn";
    case BetaMethod::above_barrier: return "AboveBarrier";
  }
  return "Unknown";
}

namespace {

// Shared panel march for the two Born-type integrals. dressed=false drops
// the inner phase entirely (plain Born).
BetaEstimate born_like(const Potential& pot, const UnitsConfig& units,
                       double E, bool dressed) {
  if (!pot.symmetric_asymptotes())
    fail(ErrorCode::asymmetric_asymptotes,
         "Born estimates require symmetric asymptotes", "potential=" + pot.name);
  units.validate();
  const double v_inf = pot.v_minus_inf;
  if (E <= v_inf)
    fail(ErrorCode::no_propagating_mode, "Born estimates require E > V_inf");
  const double k_inf = std::sqrt(wavenumber_squared(units, E, v_inf));
  const double c = units.mass / (units.hbar * units.hbar * k_inf);

  // panels no wider than 1/8 of the e^{2 i k x} oscillation period
  const double width_cap =
      std::min(kPi / (8.0 * k_inf), (pot.x_hi - pot.x_lo) / 16.0);

  Complex integral{0.0, 0.0};
  double inner_phase = 0.0;  // Phi(x) accumulated left to right

  const auto segments = pot.splice_points();
  auto spike_of = [&](double x) -> const DeltaSpike* {
    for (const auto& sp : pot.spikes)
      if (sp.location == x) return &sp;
    return nullptr;
  };

  for (std::size_t s = 0; s + 1 < segments.size(); ++s) {
    const double seg_lo = segments[s], seg_hi = segments[s + 1];
    auto shifted = [&](double x) {
      return pot.v(nudge_inside(x, seg_lo, seg_hi)) - v_inf;
    };
    const int n_panels = std::max(
        1, static_cast<int>(std::ceil((seg_hi - seg_lo) / width_cap)));
    const double w = (seg_hi - seg_lo) / n_panels;
    double x_prev = seg_lo;
    for (int p = 0; p < n_panels; ++p) {
      const double a = seg_lo + p * w;
      const double b = a + w;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      Complex panel{0.0, 0.0};
      for (int j = 0; j < 15; ++j) {
        const double x = mid + half * ordered_gk.off[j];
        if (dressed) {
          inner_phase += c * adaptive_quadrature(shifted, x_prev, x, 1e-12,
                                                 1e-15);
          x_prev = x;
        }
        const Complex dressing =
            dressed ? std::polar(1.0, -inner_phase) : Complex{1.0, 0.0};
        panel += ordered_gk.w[j] * shifted(x) *
                 std::polar(1.0, 2.0 * k_inf * x) * dressing;
      }
      integral += half * panel;
    }
    if (dressed) {
      inner_phase += c * adaptive_quadrature(shifted, x_prev, seg_hi, 1e-12,
                                             1e-15);
    }
    // spike sitting at the segment boundary just crossed
    if (s + 2 < segments.size()) {
      if (const DeltaSpike* sp = spike_of(seg_hi)) {
        const Complex dressing =
            dressed ? std::polar(1.0, -inner_phase) : Complex{1.0, 0.0};
        integral += sp->strength * std::polar(1.0, 2.0 * k_inf * sp->location) *
                    dressing;
        if (dressed) inner_phase += c * sp->strength;
      }
    }
  }

  BetaEstimate out;
  out.method = dressed ? BetaMethod::distorted_born : BetaMethod::born;
  out.beta = -kI * c * integral;
  out.magnitude = std::abs(out.beta);
  return out;
}

}  // namespace

BetaEstimate born_beta(const Potential& pot, const UnitsConfig& units,
                       double E) {
  return born_like(pot, units, E, /*dressed=*/false);
}

BetaEstimate distorted_born_beta(const Potential& pot,
                                 const UnitsConfig& units, double E) {
  return born_like(pot, units, E, /*dressed=*/true);
}

BetaEstimate above_barrier_beta(const Potential& pot,
                                const UnitsConfig& units, double E) {
  units.validate();
  if (!pot.spikes.empty())
    fail(ErrorCode::unsupported,
         "above-barrier estimate is undefined for delta spikes",
         "potential=" + pot.name);
  const auto [vmin, vmax] = scan_v_range(pot);
  (void)vmin;
  if (E <= vmax)
    fail(ErrorCode::turning_point,
         "above-barrier estimate requires E above the potential");
  auto [k_minus, k_plus] = asymptotic_wavenumbers(pot, units, E);

  auto k_at = [&](double x, double lo, double hi) {
    return wavenumber(pot, units, E, nudge_inside(x, lo, hi));
  };

  // phi anchored as in the engine: phi(x_hi) = k_plus x_hi
  const auto segments = pot.splice_points();
  double total_phase = 0.0;  // Int_{x_lo}^{x_hi} k dx
  for (std::size_t s = 0; s + 1 < segments.size(); ++s) {
    const double a = segments[s], b = segments[s + 1];
    total_phase += adaptive_quadrature(
        [&](double x) { return k_at(x, a, b); }, a, b, 1e-12, 1e-15);
  }
  const double phi_lo = k_plus * pot.x_hi - total_phase;

  Complex integral{0.0, 0.0};
  double phi = phi_lo;
  for (std::size_t s = 0; s + 1 < segments.size(); ++s) {
    const double seg_lo = segments[s], seg_hi = segments[s + 1];
    auto kf = [&](double x) { return k_at(x, seg_lo, seg_hi); };
    double x_prev = seg_lo;
    double x_panel = seg_lo;
    while (x_panel < seg_hi) {
      const double k_local = kf(x_panel);
      const double w = std::min({kPi / (8.0 * k_local), seg_hi - x_panel,
                                 (pot.x_hi - pot.x_lo) / 16.0});
      const double a = x_panel, b = x_panel + w;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      Complex panel{0.0, 0.0};
      for (int j = 0; j < 15; ++j) {
        const double x = mid + half * ordered_gk.off[j];
        phi += adaptive_quadrature(kf, x_prev, x, 1e-12, 1e-15);
        x_prev = x;
        const double xx = nudge_inside(x, seg_lo, seg_hi);
        const double k = kf(x);
        const double dk = -units.mass * pot.derivative(xx, seg_lo, seg_hi) /
                          (units.hbar * units.hbar * k);
        panel += ordered_gk.w[j] * (dk / k) * std::polar(1.0, 2.0 * phi);
      }
      integral += half * panel;
      x_panel = b;
    }
    phi += adaptive_quadrature(kf, x_prev, seg_hi, 1e-12, 1e-15);
    // jump discontinuity: the k'/k delta contributes ln(k_r/k_l) at fixed phi
    if (s + 2 < segments.size()) {
      const double kl = kf(std::nextafter(seg_hi, pot.x_lo));
      const double kr = wavenumber(
          pot, units, E, nudge_inside(seg_hi, seg_hi, segments[s + 2]));
      integral += std::log(kr / kl) * std::polar(1.0, 2.0 * phi);
    }
  }

  BetaEstimate out;
  out.method = BetaMethod::above_barrier;
  // backward-Jost orientation, re-anchored onto plane waves at x_lo
  const double delta = phi_lo - k_minus * pot.x_lo;
  out.beta = -0.5 * integral * std::polar(1.0, -delta);
  out.magnitude = std::abs(out.beta);
  return out;
}

}  // namespace sz1d
