#include "sz1d/catalog.hpp"

#include <cmath>
#include <limits>

namespace sz1d {

namespace {

constexpr double kPi = 3.14159265358979323846;

double get(const ParamMap& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

// x beyond which amplitude*exp(-2x/L) stays below tol, plus margin.
double tail_reach(double amplitude, double L, double tol) {
  const double a = std::max(std::abs(amplitude), 1e-6);
  return 0.5 * std::abs(L) * std::log(4.0 * a / tol) + 2.0 * std::abs(L);
}

}  // namespace

double delta_T(double strength, double E, const UnitsConfig& units) {
  if (E <= 0.0) fail(ErrorCode::no_propagating_mode, "delta_T requires E > 0");
  const double h2 = units.hbar * units.hbar;
  return 1.0 / (1.0 + units.mass * strength * strength / (2.0 * h2 * E));
}

double double_delta_T(double strength, double L, double E,
                      const UnitsConfig& units) {
  if (E <= 0.0)
    fail(ErrorCode::no_propagating_mode, "double_delta_T requires E > 0");
  if (L <= 0.0) fail(ErrorCode::invalid_config, "double_delta_T requires L > 0");
  const double k = std::sqrt(wavenumber_squared(units, E, 0.0));
  const double g = 2.0 * units.mass * strength / (units.hbar * units.hbar * k);
  const double bracket =
      g * std::cos(k * L) + 0.5 * g * g * std::sin(k * L);
  return 1.0 / (1.0 + bracket * bracket);
}

double square_barrier_T(double V_e, double L, double E,
                        const UnitsConfig& units) {
  if (E <= V_e)
    fail(ErrorCode::under_barrier, "square_barrier_T requires E > V_e");
  if (E <= 0.0)
    fail(ErrorCode::no_propagating_mode, "square_barrier_T requires E > 0");
  const double arg =
      std::sqrt(2.0 * units.mass * (E - V_e)) * L / units.hbar;
  const double s = std::sin(arg);
  return E * (E - V_e) / (E * (E - V_e) + 0.25 * V_e * V_e * s * s);
}

double tanh_step_R(double V_minus, double V_plus, double L, double E,
                   const UnitsConfig& units) {
  if (E <= std::max(V_minus, V_plus))
    fail(ErrorCode::no_propagating_mode,
         "tanh_step_R requires E above both asymptotes");
  const double km = std::sqrt(wavenumber_squared(units, E, V_minus));
  const double kp = std::sqrt(wavenumber_squared(units, E, V_plus));
  const double c = 0.5 * kPi;  // oracle-confirmed constant for tanh(x/L)
  const double A = c * (km - kp) * L;
  const double B = c * (km + kp) * L;
  if (B > 350.0) {
    // sinh overflows; sinh(x) = e^x (1 - e^{-2x})/2 for x > 0
    const double a = std::abs(A);
    const double log_r = a - B + std::log1p(-std::exp(-2.0 * a)) -
                         std::log1p(-std::exp(-2.0 * B));
    return std::exp(2.0 * log_r);
  }
  const double r = std::sinh(A) / std::sinh(B);
  return r * r;
}

double sech2_T(double V_e, double L, double E, const UnitsConfig& units) {
  if (E <= V_e) fail(ErrorCode::under_barrier, "sech2_T requires E > V_e");
  if (E <= 0.0)
    fail(ErrorCode::no_propagating_mode, "sech2_T requires E > 0");
  const double h2 = units.hbar * units.hbar;
  const double arg = kPi * std::sqrt(2.0 * units.mass * E) * L / units.hbar;
  const double disc = 1.0 - 8.0 * units.mass * V_e * L * L / h2;
  if (arg > 300.0) {
    // sinh^2 overflows; T = 1/(1 + (c/sinh)^2), evaluated in logs
    double log_c;
    if (disc >= 0.0) {
      const double c = std::abs(std::cos(0.5 * kPi * std::sqrt(disc)));
      if (c == 0.0) return 1.0;
      log_c = std::log(c);
    } else {
      const double y = 0.5 * kPi * std::sqrt(-disc);
      log_c = y - std::log(2.0) + std::log1p(std::exp(-2.0 * y));
    }
    const double log_ratio = std::log(2.0) + log_c - arg;
    if (log_ratio > 300.0) return 0.0;
    const double ratio = std::exp(log_ratio);
    return 1.0 / (1.0 + ratio * ratio);
  }
  const double s = std::sinh(arg);
  double c;
  if (disc >= 0.0)
    c = std::cos(0.5 * kPi * std::sqrt(disc));
  else
    c = std::cosh(0.5 * kPi * std::sqrt(-disc));
  return s * s / (s * s + c * c);
}

double asymmetric_well_T(double V1, double V2, double V3, double L, double E,
                         const UnitsConfig& units) {
  if (E <= std::max(V1, V3))
    fail(ErrorCode::no_propagating_mode,
         "asymmetric_well_T requires E above both asymptotes");
  if (E <= V2)
    fail(ErrorCode::under_barrier, "asymmetric_well_T requires E > V2");
  const double k1 = std::sqrt(wavenumber_squared(units, E, V1));
  const double k2 = std::sqrt(wavenumber_squared(units, E, V2));
  const double k3 = std::sqrt(wavenumber_squared(units, E, V3));
  const double s = std::sin(k2 * L);
  const double den =
      (k1 + k3) * (k1 + k3) * k2 * k2 +
      (k1 * k1 * k3 * k3 + k2 * k2 * (k2 * k2 - k1 * k1 - k3 * k3)) * s * s;
  return 4.0 * k1 * k2 * k2 * k3 / den;
}

double poschl_teller_T(double V0, double mu, double L, double E,
                       const UnitsConfig& units) {
  const double vm = V0 * std::exp(-2.0 * mu);
  const double vp = V0 * std::exp(2.0 * mu);
  if (E <= std::max({vm, vp, 0.0}))
    fail(ErrorCode::no_propagating_mode,
         "poschl_teller_T requires E above both asymptotes and the extremum");
  const double km = std::sqrt(wavenumber_squared(units, E, vm));
  const double kp = std::sqrt(wavenumber_squared(units, E, vp));
  const double h2 = units.hbar * units.hbar;
  const double ch = std::cosh(mu);
  const double disc = 1.0 + 8.0 * units.mass * V0 * L * L * ch * ch / h2;
  const double a = kPi * km * L;
  const double b = kPi * kp * L;
  if (a + b > 350.0) {
    // 2 sinh(a) sinh(b) = cosh(a+b) - cosh(a-b); divide through by cosh(a+b)
    const double damp = std::exp(-2.0 * (a + b));
    const double c1 = std::exp(-2.0 * std::min(a, b)) *
                      (1.0 + std::exp(-2.0 * std::abs(a - b))) / (1.0 + damp);
    double ratio_w;
    if (disc >= 0.0) {
      ratio_w = std::cos(kPi * std::sqrt(disc)) * 2.0 * std::exp(-(a + b)) /
                (1.0 + damp);
    } else {
      const double z = kPi * std::sqrt(-disc);
      const double t = z - (a + b);
      ratio_w = t > 690.0 ? std::numeric_limits<double>::infinity()
                          : std::exp(t) * (1.0 + std::exp(-2.0 * z)) /
                                (1.0 + damp);
    }
    return (1.0 - c1) / (1.0 + ratio_w);
  }
  double costerm;
  if (disc >= 0.0)
    costerm = std::cos(kPi * std::sqrt(disc));
  else
    costerm = std::cosh(kPi * std::sqrt(-disc));
  return 2.0 * std::sinh(a) * std::sinh(b) /
         (std::cosh(a + b) + costerm);
}

Potential smoothed_delta_potential(double strength, double sigma,
                                   double center) {
  Potential pot;
  const double norm = strength / (sigma * std::sqrt(2.0 * kPi));
  pot.v = [norm, sigma, center](double x) {
    const double u = (x - center) / sigma;
    return norm * std::exp(-0.5 * u * u);
  };
  pot.dv = [norm, sigma, center](double x) {
    const double u = (x - center) / sigma;
    return -norm * u / sigma * std::exp(-0.5 * u * u);
  };
  pot.v_minus_inf = pot.v_plus_inf = 0.0;
  const double reach = sigma * std::sqrt(2.0 * std::log(
      std::max(std::abs(norm), 1e-6) / 1e-13)) + 4.0 * sigma;
  pot.x_lo = center - std::max(reach, 4.0);
  pot.x_hi = center + std::max(reach, 4.0);
  pot.name = "smoothed_delta";
  return pot;
}

namespace {

Potential make_delta(const ParamMap& p) {
  Potential pot;
  pot.v = [](double) { return 0.0; };
  pot.dv = [](double) { return 0.0; };
  pot.x_lo = -10.0;
  pot.x_hi = 10.0;
  pot.spikes = {{0.0, get(p, "strength", 2.0)}};
  pot.name = "delta";
  return pot;
}

Potential make_double_delta(const ParamMap& p) {
  const double L = get(p, "L", 1.0);
  const double s = get(p, "strength", 1.0);
  Potential pot;
  pot.v = [](double) { return 0.0; };
  pot.dv = [](double) { return 0.0; };
  pot.x_lo = -L / 2 - 10.0;
  pot.x_hi = L / 2 + 10.0;
  pot.spikes = {{-L / 2, s}, {L / 2, s}};
  pot.name = "double_delta";
  return pot;
}

Potential make_square_barrier(const ParamMap& p) {
  const double L = get(p, "L", 2.0);
  const double Ve = get(p, "V_e", 0.5);
  Potential pot;
  pot.v = [L, Ve](double x) { return (x > -L / 2 && x < L / 2) ? Ve : 0.0; };
  pot.dv = [](double) { return 0.0; };
  pot.x_lo = -L / 2 - 6.0;
  pot.x_hi = L / 2 + 6.0;
  pot.breakpoints = {-L / 2, L / 2};
  pot.name = "square_barrier";
  return pot;
}

Potential make_tanh_step(const ParamMap& p) {
  const double L = get(p, "L", 1.0);
  const double Vm = get(p, "V_minus", 0.0);
  const double Vp = get(p, "V_plus", 0.75);
  Potential pot;
  pot.v = [L, Vm, Vp](double x) {
    return 0.5 * (Vm + Vp) + 0.5 * (Vp - Vm) * std::tanh(x / L);
  };
  pot.dv = [L, Vm, Vp](double x) {
    const double c = std::cosh(x / L);
    return 0.5 * (Vp - Vm) / (L * c * c);
  };
  pot.v_minus_inf = Vm;
  pot.v_plus_inf = Vp;
  const double reach = tail_reach(Vp - Vm, L, 1e-11);
  pot.x_lo = -reach;
  pot.x_hi = reach;
  pot.name = "tanh_step";
  return pot;
}

Potential make_sech2(const ParamMap& p) {
  const double L = get(p, "L", 1.0);
  const double Ve = get(p, "V_e", 0.1);
  Potential pot;
  pot.v = [L, Ve](double x) {
    const double c = std::cosh(x / L);
    return Ve / (c * c);
  };
  pot.dv = [L, Ve](double x) {
    const double c = std::cosh(x / L);
    return -2.0 * Ve * std::tanh(x / L) / (L * c * c);
  };
  const double reach = tail_reach(Ve, L, 1e-11);
  pot.x_lo = -reach;
  pot.x_hi = reach;
  pot.name = "sech2";
  return pot;
}

Potential make_asymmetric_well(const ParamMap& p) {
  const double L = get(p, "L", 1.0);
  const double V1 = get(p, "V1", 0.0);
  const double V2 = get(p, "V2", -3.0);
  const double V3 = get(p, "V3", 0.5);
  Potential pot;
  pot.v = [L, V1, V2, V3](double x) {
    if (x < -L / 2) return V1;
    if (x > L / 2) return V3;
    return V2;
  };
  pot.dv = [](double) { return 0.0; };
  pot.v_minus_inf = V1;
  pot.v_plus_inf = V3;
  pot.x_lo = -L / 2 - 6.0;
  pot.x_hi = L / 2 + 6.0;
  pot.breakpoints = {-L / 2, L / 2};
  pot.name = "asymmetric_well";
  return pot;
}

Potential make_poschl_teller(const ParamMap& p) {
  const double L = get(p, "L", 1.0);
  const double V0 = get(p, "V0", -0.2);
  const double mu = get(p, "mu", 0.3);
  Potential pot;
  const double ch2 = std::cosh(mu) * std::cosh(mu);
  const double tm = std::tanh(mu);
  pot.v = [L, V0, mu, ch2, tm](double x) {
    const double t = std::tanh((x - mu * L) / L);
    return V0 * ch2 * (t + tm) * (t + tm);
  };
  pot.dv = [L, V0, mu, ch2, tm](double x) {
    const double u = (x - mu * L) / L;
    const double t = std::tanh(u);
    const double sech2 = 1.0 - t * t;
    return 2.0 * V0 * ch2 * (t + tm) * sech2 / L;
  };
  pot.v_minus_inf = V0 * std::exp(-2.0 * mu);
  pot.v_plus_inf = V0 * std::exp(2.0 * mu);
  const double amp = std::abs(V0) * ch2 * 4.0;
  const double reach = tail_reach(amp, L, 1e-11) + std::abs(mu * L);
  pot.x_lo = -reach;
  pot.x_hi = reach;
  pot.name = "poschl_teller";
  return pot;
}

std::optional<std::string> above_asymptotes(double E, double vm, double vp) {
  if (E <= std::max(vm, vp)) return "E at or below an asymptote";
  return std::nullopt;
}

const std::vector<CatalogEntry>& build_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> c;

    c.push_back(CatalogEntry{
        "delta",
        "single delta spike strength*delta(x)",
        {{"strength", 2.0, "spike strength (energy*length)"}},
        make_delta,
        [](const ParamMap& p, double E, const UnitsConfig& u) {
          return delta_T(get(p, "strength", 1.0), E, u);
        },
        [](const ParamMap&, double E, const UnitsConfig&)
            -> std::optional<std::string> {
          if (E <= 0.0) return "E must be positive";
          return std::nullopt;
        },
        [](const ParamMap&) { return std::pair{0.05, 8.0}; }});

    c.push_back(CatalogEntry{
        "double_delta",
        "two delta spikes at +-L/2",
        {{"strength", 1.0, "spike strength"}, {"L", 1.0, "spike separation"}},
        make_double_delta,
        [](const ParamMap& p, double E, const UnitsConfig& u) {
          return double_delta_T(get(p, "strength", 1.0), get(p, "L", 1.0), E, u);
        },
        [](const ParamMap& p, double E, const UnitsConfig&)
            -> std::optional<std::string> {
          if (E <= 0.0) return "E must be positive";
          if (get(p, "L", 1.0) <= 0.0) return "L must be positive";
          return std::nullopt;
        },
        [](const ParamMap&) { return std::pair{0.05, 8.0}; }});

    c.push_back(CatalogEntry{
        "square_barrier",
        "rectangular barrier of height V_e and width L",
        {{"V_e", 0.5, "barrier height"}, {"L", 2.0, "barrier width"}},
        make_square_barrier,
        [](const ParamMap& p, double E, const UnitsConfig& u) {
          return square_barrier_T(get(p, "V_e", 0.5), get(p, "L", 2.0), E, u);
        },
        [](const ParamMap& p, double E, const UnitsConfig&)
            -> std::optional<std::string> {
          const double Ve = get(p, "V_e", 0.5);
          if (E <= std::max(Ve, 0.0)) return "over-barrier regime requires E > max(0, V_e)";
          return std::nullopt;
        },
        [](const ParamMap& p) {
          const double top = std::max(get(p, "V_e", 0.5), 0.0);
          return std::pair{top + 0.2, top + 6.0};
        }});

    c.push_back(CatalogEntry{
        "tanh_step",
        "smoothed step between V_minus and V_plus over width L",
        {{"V_minus", 0.0, "left asymptote"},
         {"V_plus", 0.75, "right asymptote"},
         {"L", 1.0, "smoothing length"}},
        make_tanh_step,
        [](const ParamMap& p, double E, const UnitsConfig& u) {
          return 1.0 - tanh_step_R(get(p, "V_minus", 0.0), get(p, "V_plus", 0.75),
                                   get(p, "L", 1.0), E, u);
        },
        [](const ParamMap& p, double E, const UnitsConfig&)
            -> std::optional<std::string> {
          return above_asymptotes(E, get(p, "V_minus", 0.0), get(p, "V_plus", 0.75));
        },
        [](const ParamMap& p) {
          const double top =
              std::max(get(p, "V_minus", 0.0), get(p, "V_plus", 0.75));
          return std::pair{top + 0.15, top + 6.0};
        }});

    c.push_back(CatalogEntry{
        "sech2",
        "V_e sech^2(x/L) barrier or well",
        {{"V_e", 0.1, "extremum value"}, {"L", 1.0, "width"}},
        make_sech2,
        [](const ParamMap& p, double E, const UnitsConfig& u) {
          return sech2_T(get(p, "V_e", 0.1), get(p, "L", 1.0), E, u);
        },
        [](const ParamMap& p, double E, const UnitsConfig&)
            -> std::optional<std::string> {
          if (E <= std::max(get(p, "V_e", 0.1), 0.0))
            return "requires E > max(0, V_e)";
          return std::nullopt;
        },
        [](const ParamMap& p) {
          const double top = std::max(get(p, "V_e", 0.1), 0.0);
          return std::pair{top + 0.15, top + 6.0};
        }});

    c.push_back(CatalogEntry{
        "asymmetric_well",
        "three-level piecewise-constant potential",
        {{"V1", 0.0, "left level"},
         {"V2", -3.0, "middle level"},
         {"V3", 0.5, "right level"},
         {"L", 1.0, "middle width"}},
        make_asymmetric_well,
        [](const ParamMap& p, double E, const UnitsConfig& u) {
          return asymmetric_well_T(get(p, "V1", 0.0), get(p, "V2", -3.0),
                                   get(p, "V3", 0.5), get(p, "L", 1.0), E, u);
        },
        [](const ParamMap& p, double E, const UnitsConfig&)
            -> std::optional<std::string> {
          const double top = std::max(
              {get(p, "V1", 0.0), get(p, "V2", -3.0), get(p, "V3", 0.5)});
          if (E <= top) return "requires E above every level";
          return std::nullopt;
        },
        [](const ParamMap& p) {
          const double top = std::max(
              {get(p, "V1", 0.0), get(p, "V2", -3.0), get(p, "V3", 0.5)});
          return std::pair{top + 0.2, top + 6.0};
        }});

    c.push_back(CatalogEntry{
        "poschl_teller",
        "V0 cosh^2(mu) [tanh((x-mu L)/L) + tanh(mu)]^2",
        {{"V0", -0.2, "scale"}, {"mu", 0.3, "asymmetry"}, {"L", 1.0, "width"}},
        make_poschl_teller,
        [](const ParamMap& p, double E, const UnitsConfig& u) {
          return poschl_teller_T(get(p, "V0", -0.2), get(p, "mu", 0.3),
                                 get(p, "L", 1.0), E, u);
        },
        [](const ParamMap& p, double E, const UnitsConfig&)
            -> std::optional<std::string> {
          const double V0 = get(p, "V0", -0.2);
          const double mu = get(p, "mu", 0.3);
          if (std::abs(mu) > 10.0) return "mu too large: degenerate scaling";
          if (get(p, "L", 1.0) <= 0.0) return "L must be positive";
          const double top =
              std::max({V0 * std::exp(-2 * mu), V0 * std::exp(2 * mu), 0.0});
          if (E <= top) return "requires E above both asymptotes and the extremum";
          return std::nullopt;
        },
        [](const ParamMap& p) {
          const double V0 = get(p, "V0", -0.2);
          const double mu = get(p, "mu", 0.3);
          const double top =
              std::max({V0 * std::exp(-2 * mu), V0 * std::exp(2 * mu), 0.0});
          return std::pair{top + 0.2, top + 6.0};
        }});

    return c;
  }();
  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() { return build_catalog(); }

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  fail(ErrorCode::invalid_config, "unknown catalog entry", "name=" + name);
}

Potential make_catalog_potential(const std::string& name, const ParamMap& p) {
  return catalog_entry(name).make_potential(p);
}

}  // namespace sz1d
