#include "sz1d/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sz1d/quadrature.hpp"

namespace sz1d {

namespace {

// Keep evaluation strictly inside an open segment: piecewise potentials carry
// their inner value up to one ulp from the edge.
double nudge_inside(double x, double lo, double hi) {
  if (x <= lo) return std::nextafter(lo, hi);
  if (x >= hi) return std::nextafter(hi, lo);
  return x;
}

}  // namespace

std::vector<double> Potential::splice_points() const {
  std::vector<double> pts{x_lo};
  for (const auto& s : spikes) pts.push_back(s.location);
  for (double b : breakpoints) pts.push_back(b);
  pts.push_back(x_hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.front() != x_lo || pts.back() != x_hi)
    fail(ErrorCode::invalid_config,
         "spikes/breakpoints must lie strictly inside (x_lo, x_hi)",
         "potential=" + name);
  return pts;
}

double Potential::derivative(double x, double lo, double hi) const {
  if (dv) return dv(x);
  double h = 1e-5;
  const double room = std::min(x - lo, hi - x);
  if (room > 1e-9) {
    h = std::min(h, 0.5 * room);
    return (v(x + h) - v(x - h)) / (2.0 * h);
  }
  // one-sided near a segment edge
  if (x - lo <= hi - x) return (v(x + h) - v(x)) / h;
  return (v(x) - v(x - h)) / h;
}

double wavenumber(const Potential& pot, const UnitsConfig& units, double E,
                  double x) {
  const double V = pot.v(x);
  if (E < V)
    fail(ErrorCode::turning_point, "E < V(x): no real wavenumber",
         "x=" + std::to_string(x) + " V=" + std::to_string(V) +
             " E=" + std::to_string(E));
  return std::sqrt(wavenumber_squared(units, E, V));
}

std::pair<double, double> asymptotic_wavenumbers(const Potential& pot,
                                                 const UnitsConfig& units,
                                                 double E) {
  if (E <= pot.v_minus_inf || E <= pot.v_plus_inf)
    fail(ErrorCode::no_propagating_mode,
         "E must exceed both asymptotic potential values",
         "E=" + std::to_string(E) + " v-inf=" + std::to_string(pot.v_minus_inf) +
             " v+inf=" + std::to_string(pot.v_plus_inf));
  return {std::sqrt(wavenumber_squared(units, E, pot.v_minus_inf)),
          std::sqrt(wavenumber_squared(units, E, pot.v_plus_inf))};
}

bool tails_ok(const Potential& pot) {
  const double lo = std::nextafter(pot.x_lo, pot.x_hi);
  const double hi = std::nextafter(pot.x_hi, pot.x_lo);
  return std::abs(pot.v(lo) - pot.v_minus_inf) <= pot.tail_tolerance &&
         std::abs(pot.v(hi) - pot.v_plus_inf) <= pot.tail_tolerance;
}

void require_tails(const Potential& pot) {
  if (!tails_ok(pot))
    fail(ErrorCode::non_decaying_tail,
         "potential does not reach its asymptotes at the truncation points",
         "potential=" + pot.name);
}

std::pair<double, double> scan_v_range(const Potential& pot,
                                       std::size_t grid_points) {
  double vmin = pot.v_minus_inf, vmax = pot.v_minus_inf;
  auto take = [&](double val) {
    vmin = std::min(vmin, val);
    vmax = std::max(vmax, val);
  };
  take(pot.v_plus_inf);
  const auto pts = pot.splice_points();
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const double lo = pts[s], hi = pts[s + 1];
    const std::size_t n = std::max<std::size_t>(
        8, static_cast<std::size_t>(grid_points * (hi - lo) /
                                    (pot.x_hi - pot.x_lo)));
    for (std::size_t i = 0; i <= n; ++i) {
      const double x =
          nudge_inside(lo + (hi - lo) * static_cast<double>(i) / n, lo, hi);
      take(pot.v(x));
    }
  }
  return {vmin, vmax};
}

namespace {

// Golden-section refinement of an extremum bracketed by grid neighbors.
double golden_refine(const auto& f, double a, double b, bool maximize,
                     double xtol) {
  constexpr double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    const bool pick_left = maximize ? (f1 > f2) : (f1 < f2);
    if (pick_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

struct Sample {
  double x;
  double k;
  bool at_jump;  // sampled at a breakpoint side; do not refine around it
};

}  // namespace

ExtremaProfile find_extrema(const Potential& pot, const UnitsConfig& units,
                            double E, std::size_t grid_points) {
  ExtremaProfile profile;
  {
    auto [km, kp] = asymptotic_wavenumbers(pot, units, E);
    profile.k_minus_inf = km;
    profile.k_plus_inf = kp;
  }

  auto k_at = [&](double x) { return wavenumber(pot, units, E, x); };

  // Sample k over the interval, splitting at splice points so jump
  // discontinuities appear as adjacent one-ulp-apart samples.
  std::vector<Sample> samples;
  const auto pts = pot.splice_points();
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const double lo = pts[s], hi = pts[s + 1];
    const std::size_t n = std::max<std::size_t>(
        16, static_cast<std::size_t>(grid_points * (hi - lo) /
                                     (pot.x_hi - pot.x_lo)));
    for (std::size_t i = 0; i <= n; ++i) {
      double x = lo + (hi - lo) * static_cast<double>(i) / n;
      const bool edge = (i == 0 || i == n);
      x = nudge_inside(x, lo, hi);
      const double kv = k_at(x);
      if (kv <= 0.0)
        fail(ErrorCode::turning_point, "sampled V(x) >= E",
             "x=" + std::to_string(x));
      samples.push_back({x, kv, edge});
    }
  }

  // Plateau-aware turning detection on the sample sequence.
  const double k_scale =
      std::max(profile.k_minus_inf, profile.k_plus_inf);
  const double flat_eps = 32.0 * std::numeric_limits<double>::epsilon() * k_scale;
  int last_sign = 0;
  std::size_t last_move = 0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double d = samples[i + 1].k - samples[i].k;
    if (std::abs(d) <= flat_eps) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      // extremum between samples[last_move] and samples[i+1]
      const bool is_peak = last_sign > 0;
      const Sample& left = samples[last_move];
      const Sample& mid = samples[i];
      const Sample& right = samples[i + 1];
      double position, k_value;
      if (mid.at_jump || left.at_jump) {
        // extremum realized at a discontinuity or plateau edge
        position = mid.x;
        k_value = mid.k;
      } else {
        position = golden_refine(k_at, left.x, right.x, is_peak, 1e-10);
        k_value = k_at(position);
      }
      profile.entries.push_back(
          {position, k_value,
           is_peak ? ExtremumKind::peak : ExtremumKind::valley});
    }
    last_sign = sign;
    last_move = i;
  }

  // Prune numerically insignificant extrema while keeping alternation.
  const double ln_eps = 1e-9;
  auto significance = [&](std::size_t i) {
    const double prev =
        i == 0 ? profile.k_minus_inf : profile.entries[i - 1].k_value;
    const double next = i + 1 == profile.entries.size()
                            ? profile.k_plus_inf
                            : profile.entries[i + 1].k_value;
    const double ke = profile.entries[i].k_value;
    return std::min(std::abs(std::log(ke / prev)),
                    std::abs(std::log(ke / next)));
  };
  bool changed = true;
  while (changed && !profile.entries.empty()) {
    changed = false;
    std::size_t worst = 0;
    double worst_sig = significance(0);
    for (std::size_t i = 1; i < profile.entries.size(); ++i) {
      const double s = significance(i);
      if (s < worst_sig) {
        worst = i;
        worst_sig = s;
      }
    }
    if (worst_sig < ln_eps) {
      auto& e = profile.entries;
      if (worst == 0 || worst + 1 == e.size()) {
        e.erase(e.begin() + worst);
      } else {
        // drop it together with the shallower same-kind neighbor
        const bool peak = e[worst - 1].kind == ExtremumKind::peak;
        const bool left_deeper = peak ? (e[worst - 1].k_value > e[worst + 1].k_value)
                                      : (e[worst - 1].k_value < e[worst + 1].k_value);
        const std::size_t drop = left_deeper ? worst + 1 : worst - 1;
        e.erase(e.begin() + std::max(worst, drop));
        e.erase(e.begin() + std::min(worst, drop));
      }
      changed = true;
    }
  }

  for (std::size_t i = 0; i + 1 < profile.entries.size(); ++i)
    if (profile.entries[i].kind == profile.entries[i + 1].kind)
      fail(ErrorCode::non_alternating_profile,
           "extrema detection produced consecutive same-kind entries",
           "potential=" + pot.name);
  return profile;
}

double l1_shifted_norm(const Potential& pot, double v_ref) {
  const double lo = std::nextafter(pot.x_lo, pot.x_hi);
  const double hi = std::nextafter(pot.x_hi, pot.x_lo);
  if (std::abs(pot.v(lo) - v_ref) > pot.tail_tolerance ||
      std::abs(pot.v(hi) - v_ref) > pot.tail_tolerance)
    fail(ErrorCode::non_decaying_tail,
         "|V - v_ref| does not decay at the truncation points",
         "potential=" + pot.name);

  double total = 0.0;
  const auto pts = pot.splice_points();
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const double a = pts[s], b = pts[s + 1];
    auto f = [&](double x) {
      return std::abs(pot.v(nudge_inside(x, a, b)) - v_ref);
    };
    total += adaptive_quadrature(f, a, b, 1e-11, 1e-14);
  }
  for (const auto& spike : pot.spikes) total += std::abs(spike.strength);
  return total;
}

}  // namespace sz1d
