#include "sz1d/verify.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>

#include "sz1d/bounds.hpp"
#include "sz1d/catalog.hpp"
#include "sz1d/engine.hpp"
#include "sz1d/parallel.hpp"
#include "sz1d/random_potentials.hpp"

namespace sz1d {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

PhaseVariant preferred_phase(const Potential& pot) {
  return pot.symmetric_asymptotes() ? PhaseVariant::constant_k
                                    : PhaseVariant::wkb;
}

struct DominanceFailure {
  std::string potential;
  double energy;
  std::string family;
  std::string what;
};

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options,
                                          std::ostream& out) {
  detail::vartheta_sign_bug.store(options.inject_vartheta_bug);
  struct BugGuard {
    ~BugGuard() { detail::vartheta_sign_bug.store(false); }
  } guard;

  const UnitsConfig units;
  IntegratorOptions tol;
  tol.rel_tol *= options.tol_scale;
  tol.abs_tol *= options.tol_scale;

  std::vector<CheckResult> results;
  auto report = [&](CheckResult r) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << "\n";
    results.push_back(std::move(r));
  };

  // --- catalog vs engine, with conservation piggybacked -------------------
  {
    double worst_rel = 0.0, worst_cons = 0.0, worst_unitarity = 0.0;
    std::string worst_where = "-";
    std::mutex mu;
    bool failed = false;
    std::string fail_detail;

    const auto& entries = catalog();
    parallel_for(entries.size(), options.workers, [&](std::size_t idx) {
      const CatalogEntry& entry = entries[idx];
      ParamMap params;
      for (const auto& p : entry.params) params[p.name] = p.default_value;
      const Potential pot = entry.make_potential(params);
      const PhaseVariant phase = preferred_phase(pot);
      const auto [e_lo, e_hi] = entry.energy_window(params);
      for (int i = 0; i < options.catalog_energies; ++i) {
        const double E =
            e_lo + (e_hi - e_lo) * i /
                       std::max(1, options.catalog_energies - 1);
        if (entry.invalid_reason(params, E, units)) continue;
        const double T_exact = entry.exact_T(params, E, units);
        const ScatteringResult res = integrate(pot, units, E, phase, tol);
        const double rel = std::abs(res.T - T_exact) / T_exact;
        const double uni = std::abs(res.T + res.R - 1.0);
        std::lock_guard lock(mu);
        if (rel > worst_rel) {
          worst_rel = rel;
          worst_where = entry.name + " E=" + fmt(E);
        }
        worst_cons = std::max(worst_cons, res.conservation_residual);
        worst_unitarity = std::max(worst_unitarity, uni);
        if (rel > 1e-6 && !failed) {
          failed = true;
          fail_detail = entry.name + " E=" + fmt(E) + " rel=" + fmt(rel);
        }
      }
    });

    report({"catalog equivalence (|T_ode - T_exact|/T <= 1e-6)", !failed,
            failed ? fail_detail : "worst " + fmt(worst_rel) + " at " + worst_where});
    report({"conservation (residual <= 1e-8, |T+R-1| <= 1e-7)",
            worst_cons <= 1e-8 && worst_unitarity <= 1e-7,
            "residual " + fmt(worst_cons) + ", unitarity " + fmt(worst_unitarity)});
  }

  // --- bound dominance on seeded random potentials -------------------------
  {
    std::mutex mu;
    std::vector<DominanceFailure> failures;
    std::size_t checks = 0;

    parallel_for(options.random_potentials, options.workers, [&](std::size_t i) {
      const Potential pot =
          random_gaussian_bumps(options.seed, static_cast<std::uint32_t>(i));
      const auto [vmin, vmax] = scan_v_range(pot);
      (void)vmin;
      const double e_lo = std::max(0.08, vmax + 0.05);
      const double e_hi = std::max(4.0, 3.0 * std::abs(vmax) + 1.0);
      const double wkb_gate = vmax + 0.04;

      std::size_t local_checks = 0;
      std::vector<DominanceFailure> local;
      auto challenge = [&](const BoundReport& r, const ScatteringResult& res,
                           double E) {
        const double slack = 1e-9;
        const std::string family{bound_family_name(r.family)};
        ++local_checks;
        if (res.T < r.T_floor - slack)
          local.push_back({pot.name, E, family,
                           "T=" + fmt(res.T) + " < floor " + fmt(r.T_floor)});
        if (res.R > r.R_cap + slack)
          local.push_back({pot.name, E, family,
                           "R=" + fmt(res.R) + " > cap " + fmt(r.R_cap)});
        if (std::abs(res.alpha) > r.alpha_cap + slack)
          local.push_back({pot.name, E, family, "|alpha| above cosh(theta)"});
        if (std::abs(res.beta) > r.beta_cap + slack)
          local.push_back({pot.name, E, family, "|beta| above sinh(theta)"});
      };

      for (int j = 0; j < options.energies_per_potential; ++j) {
        const double E =
            e_lo * std::pow(e_hi / e_lo,
                            static_cast<double>(j) /
                                std::max(1, options.energies_per_potential - 1));
        const ScatteringResult res =
            integrate(pot, units, E, PhaseVariant::constant_k, tol);

        const Case1Bounds c1 = case1_bound(pot, units, E);
        challenge(c1.strong, res, E);
        challenge(c1.weak, res, E);
        challenge(general_bound(pot, units, E, PhaseVariant::constant_k), res,
                  E);

        if (E > wkb_gate) {
          challenge(general_bound(pot, units, E, PhaseVariant::wkb), res, E);
          challenge(case2_bound(pot, units, E), res, E);
          const ExtremaProfile profile = find_extrema(pot, units, E);
          challenge(multi_extrema_bound(profile), res, E);
          if (profile.entries.size() == 1)
            challenge(single_extremum_bound(profile.k_minus_inf,
                                            profile.k_plus_inf,
                                            profile.entries[0].k_value),
                      res, E);
          if (profile.entries.empty())
            challenge(monotonic_bound(profile.k_minus_inf, profile.k_plus_inf),
                      res, E);
        }
      }
      std::lock_guard lock(mu);
      checks += local_checks;
      failures.insert(failures.end(), local.begin(), local.end());
    });

    std::string detail;
    if (failures.empty()) {
      detail = std::to_string(checks) + " comparisons, seed " +
               std::to_string(options.seed);
    } else {
      const auto& f = failures.front();
      detail = std::to_string(failures.size()) + " violations; first: " +
               f.potential + " E=" + fmt(f.energy) + " family=" + f.family +
               " " + f.what;
    }
    report({"bound dominance (T >= floor, R <= cap, slack 1e-9)",
            failures.empty(), detail});
  }

  // --- saturation -----------------------------------------------------------
  {
    bool pass = true;
    std::string detail;
    // asymmetric well at k2 L = (2n+1) pi/2 sits exactly on its bound
    const double V1 = 0.0, V2 = -3.0, V3 = 0.5;
    for (int n = 0; n < 3 && pass; ++n) {
      const double E = 1.0;
      const double k2 = std::sqrt(wavenumber_squared(units, E, V2));
      const double L = (2 * n + 1) * kPi / (2.0 * k2);
      ParamMap p{{"V1", V1}, {"V2", V2}, {"V3", V3}, {"L", L}};
      const Potential pot = make_catalog_potential("asymmetric_well", p);
      const ScatteringResult res =
          integrate(pot, units, E, PhaseVariant::wkb, tol);
      const double k1 = std::sqrt(wavenumber_squared(units, E, V1));
      const double k3 = std::sqrt(wavenumber_squared(units, E, V3));
      const BoundReport bound = single_extremum_bound(k1, k3, k2);
      if (std::abs(res.T - bound.T_floor) > 1e-6) {
        pass = false;
        detail = "asymmetric well n=" + std::to_string(n) + " |T - floor|=" +
                 fmt(std::abs(res.T - bound.T_floor));
      }
    }
    // square barrier resonances transmit perfectly
    for (int n = 1; n <= 3 && pass; ++n) {
      const double E = 1.0, Ve = 0.5;
      const double k2 = std::sqrt(wavenumber_squared(units, E, Ve));
      const double L = n * kPi / k2;
      ParamMap p{{"V_e", Ve}, {"L", L}};
      const Potential pot = make_catalog_potential("square_barrier", p);
      const ScatteringResult res =
          integrate(pot, units, E, PhaseVariant::constant_k, tol);
      if (std::abs(res.T - 1.0) > 1e-8) {
        pass = false;
        detail = "square barrier n=" + std::to_string(n) + " |T-1|=" +
                 fmt(std::abs(res.T - 1.0));
      }
    }
    report({"saturation (asymmetric well on its bound, resonant T = 1)", pass,
            detail});
  }

  // --- step-function limit --------------------------------------------------
  {
    const double Vm = 0.0, Vp = 0.75, E = 1.0;
    const double km = std::sqrt(wavenumber_squared(units, E, Vm));
    const double kp = std::sqrt(wavenumber_squared(units, E, Vp));
    const double cap = monotonic_bound(km, kp).R_cap;
    bool pass = true;
    std::string detail;
    double prev_R = -1.0, last_R = 0.0;
    for (double L : {1.0, 0.1, 0.01}) {
      ParamMap p{{"V_minus", Vm}, {"V_plus", Vp}, {"L", L}};
      const Potential pot = make_catalog_potential("tanh_step", p);
      const ScatteringResult res =
          integrate(pot, units, E, PhaseVariant::wkb, tol);
      if (res.R > cap + 1e-9 || res.R < prev_R) {
        pass = false;
        detail = "L=" + fmt(L) + " R=" + fmt(res.R) + " cap=" + fmt(cap);
      }
      prev_R = res.R;
      last_R = res.R;
    }
    if (pass && cap - last_R > 1e-3) {
      pass = false;
      detail = "gap at L=0.01 is " + fmt(cap - last_R);
    }
    report({"step-function limit (R -> R_cap, never above)", pass,
            pass ? "gap " + fmt(cap - last_R) + " at L=0.01" : detail});
  }

  // --- delta-spike weak-bound asymptotics -----------------------------------
  {
    const double s = 2.0;
    const double scale =
        units.mass * s * s / (2.0 * units.hbar * units.hbar);
    const double E = 100.0 * scale;
    const double T_exact = delta_T(s, E, units);
    ParamMap p{{"strength", s}};
    const Potential pot = make_catalog_potential("delta", p);
    const double floor = case1_bound(pot, units, E).weak.T_floor;
    const double gap = (T_exact - floor) / T_exact;
    report({"delta weak-bound asymptotics (gap <= 1% at E = 100 m a^2/2hbar^2)",
            gap >= -1e-12 && gap <= 0.01, "relative gap " + fmt(gap)});
  }

  // --- transfer-matrix algebra ----------------------------------------------
  {
    ParamMap p{{"V_e", 0.3}, {"L", 1.0}};
    const Potential pot = make_catalog_potential("sech2", p);
    const double E = 1.0;
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> u(pot.x_lo + 1.0, pot.x_hi - 1.0);
    bool pass = true;
    std::string detail;
    for (int trial = 0; trial < 5 && pass; ++trial) {
      double x1 = u(rng), x2 = u(rng), x3 = u(rng);
      if (x1 > x3) std::swap(x1, x3);
      for (PhaseVariant phase :
           {PhaseVariant::constant_k, PhaseVariant::wkb}) {
        const TransferMatrix full =
            transfer_matrix(pot, units, E, phase, x1, x3, tol);
        const TransferMatrix lower =
            transfer_matrix(pot, units, E, phase, x1, x2, tol);
        const TransferMatrix upper =
            transfer_matrix(pot, units, E, phase, x2, x3, tol);
        const TransferMatrix composed = upper * lower;
        double comp_res = 0.0;
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            comp_res = std::max(comp_res,
                                std::abs(full.m[r][c] - composed.m[r][c]));
        const double det_res = std::abs(full.det() - 1.0);
        const double su_res = full.su11_residual();
        if (det_res > 1e-8 || su_res > 1e-8 || comp_res > 1e-8) {
          pass = false;
          detail = "det " + fmt(det_res) + ", su11 " + fmt(su_res) +
                   ", composition " + fmt(comp_res);
        }
      }
    }
    report({"transfer-matrix algebra (det, SU(1,1), composition, 1e-8)", pass,
            detail});
  }

  return results;
}

}  // namespace sz1d
