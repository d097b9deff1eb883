// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest or directly from the build tree.

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "sz1d/approx.hpp"
#include "sz1d/bounds.hpp"
#include "sz1d/catalog.hpp"
#include "sz1d/engine.hpp"
#include "sz1d/parallel.hpp"
#include "sz1d/parametric.hpp"
#include "sz1d/random_potentials.hpp"

using namespace sz1d;

namespace {

constexpr double kPi = 3.14159265358979323846;
const UnitsConfig kUnits;
int failures = 0;

void criterion(int number, const std::string& name, bool pass,
               const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1 & 2: catalog equivalence at 1e-6 over 50-point grids within two minutes,
// with conservation and unitarity tracked on the same runs.
void catalog_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_rel = 0.0, worst_cons = 0.0, worst_uni = 0.0;
  std::string worst_at = "-";

  const auto& entries = catalog();
  std::vector<std::string> entry_worst(entries.size());
  std::vector<double> entry_rel(entries.size(), 0.0);
  std::vector<double> entry_cons(entries.size(), 0.0);
  std::vector<double> entry_uni(entries.size(), 0.0);

  parallel_for(entries.size(), 0, [&](std::size_t idx) {
    const CatalogEntry& entry = entries[idx];
    ParamMap params;
    for (const auto& p : entry.params) params[p.name] = p.default_value;
    const Potential pot = entry.make_potential(params);
    const PhaseVariant phase = pot.symmetric_asymptotes()
                                   ? PhaseVariant::constant_k
                                   : PhaseVariant::wkb;
    const auto [lo, hi] = entry.energy_window(params);
    for (int i = 0; i < 50; ++i) {
      const double E = lo + (hi - lo) * i / 49.0;
      if (entry.invalid_reason(params, E, kUnits)) continue;
      const double T_exact = entry.exact_T(params, E, kUnits);
      const ScatteringResult r = integrate(pot, kUnits, E, phase);
      const double rel = std::abs(r.T - T_exact) / T_exact;
      if (rel > entry_rel[idx]) {
        entry_rel[idx] = rel;
        entry_worst[idx] = entry.name + " E=" + fmt(E);
      }
      entry_cons[idx] = std::max(entry_cons[idx], r.conservation_residual);
      entry_uni[idx] = std::max(entry_uni[idx], std::abs(r.T + r.R - 1.0));
    }
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entry_rel[i] > worst_rel) {
      worst_rel = entry_rel[i];
      worst_at = entry_worst[i];
    }
    worst_cons = std::max(worst_cons, entry_cons[i]);
    worst_uni = std::max(worst_uni, entry_uni[i]);
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  criterion(1, "catalog equivalence (7 potentials x 50 energies, rel 1e-6)",
            worst_rel <= 1e-6 && seconds <= 120.0,
            "worst rel " + fmt(worst_rel) + " at " + worst_at + ", " +
                fmt(seconds) + " s");
  criterion(2, "conservation (residual 1e-8, unitarity 1e-7)",
            worst_cons <= 1e-8 && worst_uni <= 1e-7,
            "residual " + fmt(worst_cons) + ", |T+R-1| " + fmt(worst_uni));
}

// ---------------------------------------------------------------------------
// 3: dominance across 200 seeded potentials x 10 energies x admissible
// families at slack 1e-9.
void dominance() {
  const std::uint64_t seed = 20240817;
  std::atomic<long> checks{0};
  std::atomic<int> violations{0};
  std::string first;
  std::mutex mu;

  parallel_for(200, 0, [&](std::size_t i) {
    const Potential pot =
        random_gaussian_bumps(seed, static_cast<std::uint32_t>(i));
    const auto [vmin, vmax] = scan_v_range(pot);
    (void)vmin;
    const double e_lo = std::max(0.08, vmax + 0.05);
    const double e_hi = std::max(4.0, 3.0 * std::abs(vmax) + 1.0);

    auto challenge = [&](const BoundReport& r, const ScatteringResult& res,
                         double E) {
      ++checks;
      const double slack = 1e-9;
      const bool bad = res.T < r.T_floor - slack || res.R > r.R_cap + slack ||
                       std::abs(res.alpha) > r.alpha_cap + slack ||
                       std::abs(res.beta) > r.beta_cap + slack;
      if (bad) {
        ++violations;
        std::lock_guard lock(mu);
        if (first.empty())
          first = pot.name + " E=" + fmt(E) + " " +
                  std::string(bound_family_name(r.family));
      }
    };

    for (int j = 0; j < 10; ++j) {
      const double E = e_lo * std::pow(e_hi / e_lo, j / 9.0);
      const ScatteringResult res =
          integrate(pot, kUnits, E, PhaseVariant::constant_k);
      const Case1Bounds c1 = case1_bound(pot, kUnits, E);
      challenge(c1.strong, res, E);
      challenge(c1.weak, res, E);
      challenge(general_bound(pot, kUnits, E, PhaseVariant::constant_k), res, E);
      if (E > vmax + 0.04) {
        challenge(general_bound(pot, kUnits, E, PhaseVariant::wkb), res, E);
        challenge(case2_bound(pot, kUnits, E), res, E);
        const ExtremaProfile profile = find_extrema(pot, kUnits, E);
        challenge(multi_extrema_bound(profile), res, E);
        if (profile.entries.size() == 1)
          challenge(
              single_extremum_bound(profile.k_minus_inf, profile.k_plus_inf,
                                    profile.entries[0].k_value),
              res, E);
      }
    }
  });

  criterion(3, "bound dominance (200 seeded potentials x 10 energies)",
            violations.load() == 0,
            std::to_string(checks.load()) + " comparisons, " +
                std::to_string(violations.load()) + " violations" +
                (first.empty() ? "" : ", first " + first));
}

// ---------------------------------------------------------------------------
// 4: saturation rows.
void saturation() {
  bool pass = true;
  std::string detail;
  const double E = 1.0, V1 = 0.0, V2 = -3.0, V3 = 0.5;
  const double k2 = std::sqrt(wavenumber_squared(kUnits, E, V2));
  const double k1 = std::sqrt(wavenumber_squared(kUnits, E, V1));
  const double k3 = std::sqrt(wavenumber_squared(kUnits, E, V3));
  double worst_gap = 0.0;
  for (int n = 0; n < 3; ++n) {
    const double L = (2 * n + 1) * kPi / (2.0 * k2);
    const Potential pot = make_catalog_potential(
        "asymmetric_well", {{"V1", V1}, {"V2", V2}, {"V3", V3}, {"L", L}});
    const ScatteringResult r = integrate(pot, kUnits, E, PhaseVariant::wkb);
    const double floor = single_extremum_bound(k1, k3, k2).T_floor;
    worst_gap = std::max(worst_gap, std::abs(r.T - floor));
  }
  if (worst_gap > 1e-6) {
    pass = false;
    detail = "asymmetric-well gap " + fmt(worst_gap);
  }

  double worst_res = 0.0;
  const double Ve = 0.5;
  const double kb = std::sqrt(wavenumber_squared(kUnits, E, Ve));
  for (int n = 1; n <= 3; ++n) {
    const Potential pot = make_catalog_potential(
        "square_barrier", {{"V_e", Ve}, {"L", n * kPi / kb}});
    const ScatteringResult r =
        integrate(pot, kUnits, E, PhaseVariant::constant_k);
    worst_res = std::max(worst_res, std::abs(r.T - 1.0));
  }
  if (worst_res > 1e-8) {
    pass = false;
    detail += " resonance |T-1| " + fmt(worst_res);
  }
  if (pass)
    detail = "well gap " + fmt(worst_gap) + ", resonance " + fmt(worst_res);
  criterion(4, "saturation (k2 L = (2n+1)pi/2 well, k2 L = n pi barrier)",
            pass, detail);
}

// ---------------------------------------------------------------------------
// 5: tanh family approaches the step bound from below.
void step_limit() {
  const double E = 1.0, Vm = 0.0, Vp = 0.75;
  const double km = std::sqrt(wavenumber_squared(kUnits, E, Vm));
  const double kp = std::sqrt(wavenumber_squared(kUnits, E, Vp));
  const double cap = monotonic_bound(km, kp).R_cap;
  bool pass = true;
  std::string detail;
  double prev = -1.0, last = 0.0;
  for (double L : {1.0, 0.1, 0.01}) {
    const Potential pot = make_catalog_potential(
        "tanh_step", {{"V_minus", Vm}, {"V_plus", Vp}, {"L", L}});
    const ScatteringResult r = integrate(pot, kUnits, E, PhaseVariant::wkb);
    if (r.R <= prev || r.R > cap + 1e-9) {
      pass = false;
      detail = "L=" + fmt(L) + " R=" + fmt(r.R);
    }
    prev = r.R;
    last = r.R;
  }
  const double gap = cap - last;
  if (gap > 1e-3 || gap < -1e-9) pass = false;
  criterion(5, "step-function limit (R rises to R_cap, gap <= 1e-3 at L=0.01)",
            pass, detail.empty() ? "final gap " + fmt(gap) : detail);
}

// ---------------------------------------------------------------------------
// 6: delta exact T approaches the weak floor at E = 100 (m a^2 / 2 hbar^2).
void delta_asymptotics() {
  const double s = 2.0;
  const double scale = kUnits.mass * s * s / (2.0 * kUnits.hbar * kUnits.hbar);
  const double E = 100.0 * scale;
  const Potential pot = make_catalog_potential("delta", {{"strength", s}});
  const double T_exact = delta_T(s, E, kUnits);
  const double floor = case1_bound(pot, kUnits, E).weak.T_floor;
  const double gap = (T_exact - floor) / T_exact;
  criterion(6, "delta-spike weak-bound asymptotics (relative gap <= 1%)",
            gap >= -1e-12 && gap <= 0.01, "gap " + fmt(gap));
}

// ---------------------------------------------------------------------------
// 7: Born-order scaling on the lambda-scaled sech^2 family.
void born_scaling() {
  const double Ve = 0.2, E = 1.0;
  const std::vector<double> lambdas{1.0, 0.5, 0.25, 0.125};
  std::vector<double> eb, ed, ea;
  for (double lam : lambdas) {
    const Potential pot =
        make_catalog_potential("sech2", {{"V_e", lam * Ve}, {"L", 1.0}});
    const ScatteringResult ck =
        integrate(pot, kUnits, E, PhaseVariant::constant_k);
    const ScatteringResult wkb = integrate(pot, kUnits, E, PhaseVariant::wkb);
    eb.push_back(std::abs(born_beta(pot, kUnits, E).beta - ck.beta));
    ed.push_back(
        std::abs(distorted_born_beta(pot, kUnits, E).beta - ck.beta));
    ea.push_back(
        std::abs(above_barrier_beta(pot, kUnits, E).beta - wkb.beta));
  }
  auto slope = [&](const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double lx = std::log(lambdas[i]), ly = std::log(err[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const double sb = slope(eb), sd = slope(ed), sa = slope(ea);
  criterion(7, "Born-order scaling (log-log slope >= 1.8, three methods)",
            sb >= 1.8 && sd >= 1.8 && sa >= 1.8,
            "Born " + fmt(sb) + ", distorted " + fmt(sd) + ", above-barrier " +
                fmt(sa));
}

// ---------------------------------------------------------------------------
// 8: transfer-matrix algebra at 1e-8.
void transfer_algebra() {
  const Potential pot = make_catalog_potential("sech2", {{"V_e", 0.3}, {"L", 1.0}});
  const double E = 1.0;
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> u(pot.x_lo + 1.0, pot.x_hi - 1.0);
  double worst_det = 0.0, worst_su = 0.0, worst_comp = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    double x1 = u(rng), x2 = u(rng), x3 = u(rng);
    if (x1 > x3) std::swap(x1, x3);
    for (PhaseVariant phase : {PhaseVariant::constant_k, PhaseVariant::wkb}) {
      const TransferMatrix full = transfer_matrix(pot, kUnits, E, phase, x1, x3);
      const TransferMatrix a = transfer_matrix(pot, kUnits, E, phase, x1, x2);
      const TransferMatrix b = transfer_matrix(pot, kUnits, E, phase, x2, x3);
      const TransferMatrix ba = b * a;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          worst_comp =
              std::max(worst_comp, std::abs(full.m[r][c] - ba.m[r][c]));
      worst_det = std::max(worst_det, std::abs(full.det() - 1.0));
      worst_su = std::max(worst_su, full.su11_residual());
    }
  }
  criterion(8, "transfer-matrix algebra (det, SU(1,1) metric, composition)",
            worst_det <= 1e-8 && worst_su <= 1e-8 && worst_comp <= 1e-8,
            "det " + fmt(worst_det) + ", metric " + fmt(worst_su) +
                ", composition " + fmt(worst_comp));
}

// ---------------------------------------------------------------------------
// 9: parametric mirror on 20 shared profiles plus the monotone cap.
FrequencyProfile shared_profile(std::mt19937_64& rng, bool symmetric) {
  std::uniform_real_distribution<double> base_d(0.8, 1.4);
  std::uniform_real_distribution<double> amp_d(0.05, 0.22);
  std::uniform_real_distribution<double> center_d(-2.0, 2.0);
  std::uniform_real_distribution<double> width_d(0.7, 1.6);
  std::uniform_real_distribution<double> step_d(0.2, 0.7);
  std::bernoulli_distribution sign_d(0.5);
  std::uniform_int_distribution<int> n_d(1, 3);

  struct Bump {
    double a, c, w;
  };
  std::vector<Bump> bumps;
  const int n = n_d(rng);
  for (int i = 0; i < n; ++i)
    bumps.push_back(
        {amp_d(rng) * (sign_d(rng) ? 1.0 : -1.0), center_d(rng), width_d(rng)});
  const double base = base_d(rng);
  const double step = symmetric ? 0.0 : step_d(rng);

  FrequencyProfile p;
  p.omega = [base, step, bumps](double t) {
    double w = base + 0.5 * step * (1.0 + std::tanh(t / 1.2));
    for (const auto& b : bumps) {
      const double c = std::cosh((t - b.c) / b.w);
      w += b.a / (c * c);
    }
    return w;
  };
  p.domega = [step, bumps](double t) {
    const double ct = std::cosh(t / 1.2);
    double d = 0.5 * step / (1.2 * ct * ct);
    for (const auto& b : bumps) {
      const double c = std::cosh((t - b.c) / b.w);
      d += -2.0 * b.a * std::tanh((t - b.c) / b.w) / (b.w * c * c);
    }
    return d;
  };
  p.omega_minus_inf = base;
  p.omega_plus_inf = base + step;
  p.t_lo = -20.0;
  p.t_hi = 20.0;
  p.name = symmetric ? "sym_profile" : "asym_profile";
  return p;
}

void parametric_mirror() {
  std::mt19937_64 rng(424242);
  double worst = 0.0;
  bool pass = true;
  std::string detail;
  int compared = 0;

  for (int i = 0; i < 20; ++i) {
    const bool symmetric = i % 2 == 0;
    const FrequencyProfile p = shared_profile(rng, symmetric);
    const ScatteringProblem mapped = to_scattering(p, kUnits);

    // scattering-side counterparts evaluated directly on the mapped problem
    if (symmetric) {
      const BoundReport via_param =
          parametric_bounds(p, ParametricCase::case1, kUnits);
      const BoundReport via_scatter =
          case1_bound(mapped.potential, kUnits, mapped.energy).strong;
      worst = std::max(worst, std::abs(via_param.theta - via_scatter.theta));
      ++compared;
    }
    {
      const BoundReport via_param =
          parametric_bounds(p, ParametricCase::case2, kUnits);
      const BoundReport via_scatter =
          case2_bound(mapped.potential, kUnits, mapped.energy);
      worst = std::max(worst, std::abs(via_param.theta - via_scatter.theta));
      ++compared;
    }
    {
      const BoundReport via_param =
          parametric_bounds(p, ParametricCase::case2c, kUnits);
      const BoundReport via_scatter = multi_extrema_bound(
          find_extrema(mapped.potential, kUnits, mapped.energy));
      worst = std::max(worst,
                       std::abs(via_param.T_floor - via_scatter.T_floor));
      ++compared;
    }
    // and the independent arithmetic of the 2-a caps
    {
      const BoundReport r =
          parametric_bounds(p, ParametricCase::case2a, kUnits);
      const double wm = p.omega_minus_inf, wp = p.omega_plus_inf;
      const double alpha_formula = (wm + wp) / (2.0 * std::sqrt(wm * wp));
      const double beta_formula =
          std::abs(wm - wp) / (2.0 * std::sqrt(wm * wp));
      worst = std::max(worst, std::abs(r.alpha_cap - alpha_formula));
      worst = std::max(worst, std::abs(r.beta_cap - beta_formula));
      ++compared;
    }
  }
  if (worst > 1e-12) {
    pass = false;
    detail = "max mirror discrepancy " + fmt(worst);
  }

  // monotone omega 1 -> 2: |beta| <= 1/(2 sqrt 2), strictly below
  FrequencyProfile mono;
  mono.omega = [](double t) { return 1.5 + 0.5 * std::tanh(t); };
  mono.domega = [](double t) {
    const double c = std::cosh(t);
    return 0.5 / (c * c);
  };
  mono.omega_minus_inf = 1.0;
  mono.omega_plus_inf = 2.0;
  mono.t_lo = -14.0;
  mono.t_hi = 14.0;
  const ParametricResult res = evolve(mono, kUnits);
  const double cap = 1.0 / (2.0 * std::sqrt(2.0));
  if (!(std::abs(res.scattering.beta) < cap)) {
    pass = false;
    detail += " monotone |beta| not below cap";
  }
  criterion(9, "parametric mirror (20 profiles) and the monotone cap", pass,
            pass ? std::to_string(compared) + " comparisons, worst " +
                       fmt(worst) + "; |beta| " +
                       fmt(std::abs(res.scattering.beta)) + " < " + fmt(cap)
                 : detail);
}

}  // namespace

int main() {
  catalog_equivalence();
  dominance();
  saturation();
  step_limit();
  delta_asymptotics();
  born_scaling();
  transfer_algebra();
  parametric_mirror();
  std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                    : "acceptance: FAILURES present");
  return failures == 0 ? 0 : 1;
}
