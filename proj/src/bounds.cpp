#include "sz1d/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sz1d/quadrature.hpp"

namespace sz1d {

namespace detail {
std::atomic<bool> vartheta_sign_bug{false};
}

std::string_view bound_family_name(BoundFamily f) {
  switch (f) {
    case BoundFamily::general: return "General";
    case BoundFamily::case1: return "Case1";
    case BoundFamily::case1_weak: return "Case1Weak";
    case BoundFamily::case2: return "Case2";
    case BoundFamily::case2a: return "Case2a";
    case BoundFamily::case2b: return "Case2b";
    case BoundFamily::case2b_asym: return "Case2bAsym";
    case BoundFamily::case2c: return "Case2c";
  }
  return "Unknown";
}

BoundFamily bound_family_from_name(std::string_view name) {
  for (BoundFamily f :
       {BoundFamily::general, BoundFamily::case1, BoundFamily::case1_weak,
        BoundFamily::case2, BoundFamily::case2a, BoundFamily::case2b,
        BoundFamily::case2b_asym, BoundFamily::case2c})
    if (bound_family_name(f) == name) return f;
  fail(ErrorCode::invalid_config, "unknown bound family",
       "name=" + std::string(name));
}

void to_json(nlohmann::json& j, const BoundReport& r) {
  j = nlohmann::json{
      {"family", std::string(bound_family_name(r.family))},
      {"theta", r.theta},
      {"alpha_cap", r.alpha_cap},
      {"beta_cap", r.beta_cap},
      {"T_floor", r.T_floor},
      {"R_cap", r.R_cap},
      {"validity", r.validity == BoundValidity::valid ? "valid" : "vacuous"}};
}

double vartheta(double dphi, double ddphi, double ksq) {
  if (dphi == 0.0)
    fail(ErrorCode::phase_derivative_zero, "vartheta requires phi' != 0");
  const double diff = ksq - dphi * dphi;
  const double value =
      std::sqrt(ddphi * ddphi + diff * diff) / (2.0 * std::abs(dphi));
  if (detail::vartheta_sign_bug.load(std::memory_order_relaxed))
    return (ddphi + diff) < 0.0 ? -value : value;  // dropped modulus
  return value;
}

namespace {

BoundReport report_from_theta(BoundFamily family, double theta) {
  BoundReport r;
  r.family = family;
  r.theta = theta;
  r.alpha_cap = std::cosh(theta);
  r.beta_cap = std::sinh(theta);
  const double c = std::cosh(theta);
  r.T_floor = 1.0 / (c * c);
  r.R_cap = 1.0 - r.T_floor;  // tanh^2, complementary by construction
  r.validity = BoundValidity::valid;
  return r;
}

double nudge_inside(double x, double lo, double hi) {
  if (x <= lo) return std::nextafter(lo, hi);
  if (x >= hi) return std::nextafter(hi, lo);
  return x;
}

// Quadrature segments: splice points plus k-extrema positions, so the |.|
// kinks of the integrands sit on panel boundaries.
std::vector<double> quadrature_cuts(const Potential& pot,
                                    const UnitsConfig& units, double E,
                                    bool add_extrema) {
  std::vector<double> pts = pot.splice_points();
  if (add_extrema) {
    const auto profile = find_extrema(pot, units, E);
    for (const auto& e : profile.entries) pts.push_back(e.position);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  return pts;
}

}  // namespace

BoundReport general_bound(const Potential& pot, const UnitsConfig& units,
                          double E, PhaseVariant phase) {
  const PhaseFunction phi = PhaseFunction::make(phase, pot, units, E);
  double theta = 0.0;

  const bool wkb = phase == PhaseVariant::wkb;
  const auto cuts = quadrature_cuts(pot, units, E, wkb);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    auto f = [&](double x) {
      const double xx = nudge_inside(x, a, b);
      const double ksq = wavenumber_squared(units, E, pot.v(xx));
      double dphi, ddphi;
      if (wkb) {
        if (ksq <= 0.0)
          fail(ErrorCode::turning_point, "E <= V inside the domain");
        dphi = std::sqrt(ksq);
        ddphi = -units.mass * pot.derivative(xx, a, b) /
                (units.hbar * units.hbar * dphi);
      } else {
        dphi = phi.k_minus_inf();
        ddphi = 0.0;
      }
      return vartheta(dphi, ddphi, ksq);
    };
    theta += adaptive_quadrature(f, a, b, 1e-10, 1e-13);
  }

  if (!pot.spikes.empty()) {
    // spikes are rejected for the WKB phase at construction
    for (const auto& sp : pot.spikes)
      theta += units.mass * std::abs(sp.strength) /
               (units.hbar * units.hbar * phi.k_minus_inf());
  }
  BoundReport r = report_from_theta(BoundFamily::general, theta);
  return r;
}

Case1Bounds case1_bound(const Potential& pot, const UnitsConfig& units,
                        double E) {
  if (!pot.symmetric_asymptotes())
    fail(ErrorCode::asymmetric_asymptotes,
         "case 1 requires symmetric asymptotes", "potential=" + pot.name);
  const double v_inf = pot.v_minus_inf;
  if (E <= v_inf)
    fail(ErrorCode::no_propagating_mode, "case 1 requires E > V_inf");
  const double I = l1_shifted_norm(pot, v_inf);
  const double k_inf = std::sqrt(wavenumber_squared(units, E, v_inf));
  const double theta = units.mass * I / (units.hbar * units.hbar * k_inf);

  Case1Bounds out;
  out.strong = report_from_theta(BoundFamily::case1, theta);
  out.weak = out.strong;
  out.weak.family = BoundFamily::case1_weak;
  // T >= 1 - theta^2 = 1 - m I^2 / (2 (E - V_inf) hbar^2); clamped, and
  // flagged vacuous when the floor drops to zero
  const double weak_R = theta * theta;
  out.weak.R_cap = std::min(weak_R, 1.0);
  out.weak.T_floor = std::max(1.0 - weak_R, 0.0);
  out.weak.validity =
      weak_R >= 1.0 ? BoundValidity::vacuous : BoundValidity::valid;
  return out;
}

BoundReport case2_bound(const Potential& pot, const UnitsConfig& units,
                        double E) {
  if (!pot.spikes.empty())
    fail(ErrorCode::unsupported,
         "case 2 is undefined for potentials with delta spikes",
         "potential=" + pot.name);
  const auto [vmin, vmax] = scan_v_range(pot);
  (void)vmin;
  if (E <= vmax)
    fail(ErrorCode::turning_point, "case 2 requires E above the potential");

  double integral = 0.0;
  const auto cuts = quadrature_cuts(pot, units, E, true);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    auto f = [&](double x) {
      const double xx = nudge_inside(x, a, b);
      const double k = wavenumber(pot, units, E, xx);
      const double dk = -units.mass * pot.derivative(xx, a, b) /
                        (units.hbar * units.hbar * k);
      return std::abs(dk) / k;
    };
    integral += adaptive_quadrature(f, a, b, 1e-10, 1e-13);
  }
  // jump discontinuities contribute |ln(k_r / k_l)|
  for (double bp : pot.breakpoints) {
    const double kl = wavenumber(pot, units, E, std::nextafter(bp, pot.x_lo));
    const double kr = wavenumber(pot, units, E, std::nextafter(bp, pot.x_hi));
    integral += std::abs(std::log(kr / kl));
  }
  return report_from_theta(BoundFamily::case2, 0.5 * integral);
}

BoundReport monotonic_bound(double k_minus, double k_plus) {
  if (!(k_minus > 0.0) || !(k_plus > 0.0))
    fail(ErrorCode::no_propagating_mode,
         "monotonic bound requires positive asymptotic wavenumbers");
  return report_from_theta(BoundFamily::case2a,
                           0.5 * std::abs(std::log(k_plus / k_minus)));
}

BoundReport single_extremum_bound(double k_minus, double k_plus,
                                  double k_extremum) {
  if (!(k_minus > 0.0) || !(k_plus > 0.0) || !(k_extremum > 0.0))
    fail(ErrorCode::no_propagating_mode,
         "single-extremum bound requires positive wavenumbers");
  const double theta =
      0.5 * std::abs(std::log(k_extremum * k_extremum / (k_minus * k_plus)));
  const double scale = std::max(k_minus, k_plus);
  const bool symmetric = std::abs(k_minus - k_plus) <= 1e-12 * scale;
  return report_from_theta(
      symmetric ? BoundFamily::case2b : BoundFamily::case2b_asym, theta);
}

BoundReport multi_extrema_bound(const ExtremaProfile& profile) {
  const double km = profile.k_minus_inf, kp = profile.k_plus_inf;
  if (!(km > 0.0) || !(kp > 0.0))
    fail(ErrorCode::no_propagating_mode,
         "extrema bound requires positive asymptotic wavenumbers");
  const auto& e = profile.entries;
  for (std::size_t i = 0; i + 1 < e.size(); ++i)
    if (e[i].kind == e[i + 1].kind)
      fail(ErrorCode::non_alternating_profile,
           "extrema profile must alternate peak/valley");
  for (const auto& p : e)
    if (!(p.k_value > 0.0))
      fail(ErrorCode::no_propagating_mode,
           "extrema bound requires positive k at every extremum");

  // Split chain products: A collects peak values squared, B valley values
  // squared; each asymptotic k joins the side opposite in kind to the
  // adjacent extremum. Then theta = 1/2 |ln(A/B)| and
  // T_floor = 4AB/(A+B)^2, R_cap = (A-B)^2/(A+B)^2.
  double A = 1.0, B = 1.0;
  for (const auto& p : e) {
    if (p.kind == ExtremumKind::peak)
      A *= p.k_value * p.k_value;
    else
      B *= p.k_value * p.k_value;
  }
  if (e.empty()) {
    A *= km;
    B *= kp;
  } else {
    (e.front().kind == ExtremumKind::valley ? A : B) *= km;
    (e.back().kind == ExtremumKind::valley ? A : B) *= kp;
  }
  BoundReport r =
      report_from_theta(BoundFamily::case2c, 0.5 * std::abs(std::log(A / B)));
  return r;
}

}  // namespace sz1d
