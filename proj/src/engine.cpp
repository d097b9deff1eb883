#include "sz1d/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sz1d/ode.hpp"

namespace sz1d {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};

double nudge_inside(double x, double lo, double hi) {
  if (lo > hi) std::swap(lo, hi);
  if (x <= lo) return std::nextafter(lo, hi);
  if (x >= hi) return std::nextafter(hi, lo);
  return x;
}

}  // namespace

std::pair<Complex, Complex> sz_derivatives(const Complex& a, const Complex& b,
                                           double phi, double dphi,
                                           double ddphi, double ksq) {
  if (dphi == 0.0)
    fail(ErrorCode::phase_derivative_zero, "phi' = 0 in the SZ system");
  const Complex em = std::polar(1.0, -2.0 * phi);  // e^{-2 i phi}
  const Complex ep = std::conj(em);
  const double diff = ksq - dphi * dphi;
  const Complex da =
      (ddphi * b * em + kI * diff * (a + b * em)) / (2.0 * dphi);
  const Complex db =
      (ddphi * a * ep - kI * diff * (b + a * ep)) / (2.0 * dphi);
  return {da, db};
}

std::pair<Complex, Complex> sz_rhs(const BogolubovState& state,
                                   const PhaseFunction& phase, double ksq) {
  return sz_derivatives(state.a, state.b, phase.phi(state.x),
                        phase.dphi(state.x), phase.ddphi(state.x), ksq);
}

double TransferMatrix::su11_residual() const {
  // E^dagger sigma_z E - sigma_z
  const Complex e00 = std::conj(m[0][0]), e10 = std::conj(m[1][0]);
  const Complex e01 = std::conj(m[0][1]), e11 = std::conj(m[1][1]);
  // rows of E^dagger are (e00, e10) and (e01, e11)
  const Complex r00 = e00 * m[0][0] - e10 * m[1][0] - 1.0;
  const Complex r01 = e00 * m[0][1] - e10 * m[1][1];
  const Complex r10 = e01 * m[0][0] - e11 * m[1][0];
  const Complex r11 = e01 * m[0][1] - e11 * m[1][1] + 1.0;
  return std::max({std::abs(r00), std::abs(r01), std::abs(r10), std::abs(r11)});
}

double TransferMatrix::conjugate_structure_residual() const {
  return std::max(std::abs(m[1][1] - std::conj(m[0][0])),
                  std::abs(m[1][0] - std::conj(m[0][1])));
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const {
  TransferMatrix out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.m[i][j] = m[i][0] * rhs.m[0][j] + m[i][1] * rhs.m[1][j];
  return out;
}

void TransferMatrix::apply(Complex& a, Complex& b) const {
  const Complex na = m[0][0] * a + m[0][1] * b;
  const Complex nb = m[1][0] * a + m[1][1] * b;
  a = na;
  b = nb;
}

namespace {

struct EngineSetup {
  double k_minus, k_plus;
  double k_inf;    // constant-k variant
  double max_step;
};

EngineSetup prepare(const Potential& pot, const UnitsConfig& units, double E,
                    PhaseVariant variant, const IntegratorOptions& opts) {
  units.validate();
  EngineSetup s{};
  auto [km, kp] = asymptotic_wavenumbers(pot, units, E);
  s.k_minus = km;
  s.k_plus = kp;
  const auto [vmin, vmax] = scan_v_range(pot);
  if (variant == PhaseVariant::constant_k) {
    if (!pot.symmetric_asymptotes())
      fail(ErrorCode::asymmetric_asymptotes,
           "constant-k integration requires symmetric asymptotes",
           "potential=" + pot.name);
    s.k_inf = km;
  } else {
    if (E <= vmax)
      fail(ErrorCode::turning_point,
           "WKB integration requires E above the potential everywhere",
           "max V=" + std::to_string(vmax));
    if (!pot.spikes.empty())
      fail(ErrorCode::unsupported,
           "WKB phase is undefined across a delta spike",
           "potential=" + pot.name);
  }
  const double k_max = std::sqrt(wavenumber_squared(units, E, vmin));
  s.max_step = std::min(opts.max_step, kPi / (10.0 * k_max));
  return s;
}

// Exact interface matching at a splice point: psi and (for spikes) the jump
// in psi' re-expressed in (a, b). `dir` is the direction of travel.
void cross_spike(Complex& a, Complex& b, double phi, double dphi,
                 double strength, const UnitsConfig& units, double dir) {
  const Complex e = std::polar(1.0, phi);
  Complex u = a * e;
  Complex v = b * std::conj(e);
  const double c = units.mass * strength / (units.hbar * units.hbar * dphi);
  const Complex shift = kI * c * (u + v) * (dir > 0 ? -1.0 : 1.0);
  u += shift;
  v -= shift;
  a = u * std::conj(e);
  b = v * e;
}

// Re-express (a, b) when phi' jumps from dphi_old (side just left) to
// dphi_new (side being entered); psi and psi' are continuous.
void rebase_dphi(Complex& a, Complex& b, double phi, double dphi_old,
                 double dphi_new) {
  if (dphi_old == dphi_new) return;
  const Complex e = std::polar(1.0, phi);
  const Complex u = a * e;
  const Complex v = b * std::conj(e);
  const double r = std::sqrt(dphi_new / dphi_old);
  const Complex sum = (u + v) * r;
  const Complex dif = (u - v) / r;
  a = 0.5 * (sum + dif) * std::conj(e);
  b = 0.5 * (sum - dif) * e;
}

struct RunState {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  double phi = 0.0;
  double max_residual = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Propagates (a, b, phi) from `from` to `to` (either direction), splicing at
// spikes and breakpoints. When `observe_steps`, on_point(x, a, b, phi, dphi,
// residual) fires at the initial point and every accepted ODE step; when
// sample_at is given instead, it fires exactly at the requested positions.
template <class PointFn>
void engine_run(const Potential& pot, const UnitsConfig& units, double E,
                PhaseVariant variant, const IntegratorOptions& opts,
                const EngineSetup& setup, double from, double to,
                RunState& st, bool observe_steps,
                const std::vector<double>* sample_at, PointFn&& on_point) {
  const double dir = to >= from ? 1.0 : -1.0;
  const double span_lo = std::min(from, to);
  const double span_hi = std::max(from, to);

  std::vector<double> splice;
  for (const auto& sp : pot.spikes) splice.push_back(sp.location);
  for (double bp : pot.breakpoints) splice.push_back(bp);
  std::erase_if(splice,
                [&](double x) { return !(span_lo < x && x < span_hi); });
  std::sort(splice.begin(), splice.end());

  auto spike_at = [&](double x) -> const DeltaSpike* {
    for (const auto& sp : pot.spikes)
      if (sp.location == x) return &sp;
    return nullptr;
  };

  // segment walls (splice points plus domain ends) bound every V evaluation
  std::vector<double> walls{pot.x_lo, pot.x_hi};
  for (const auto& sp : pot.spikes) walls.push_back(sp.location);
  for (double bp : pot.breakpoints) walls.push_back(bp);
  std::sort(walls.begin(), walls.end());
  auto segment_of = [&](double x) -> std::pair<double, double> {
    if (x <= walls.front()) return {walls[0], walls[1]};
    if (x >= walls.back()) return {walls[walls.size() - 2], walls.back()};
    auto it = std::upper_bound(walls.begin(), walls.end(), x);
    return {*(it - 1), *it};
  };

  auto in_samples = [&](double x) {
    return sample_at && std::binary_search(sample_at->begin(),
                                           sample_at->end(), x);
  };

  std::vector<double> stops = splice;
  if (sample_at)
    for (double x : *sample_at)
      if (span_lo < x && x < span_hi) stops.push_back(x);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  if (dir < 0) std::reverse(stops.begin(), stops.end());
  stops.push_back(to);

  OdeOptions ode_opts;
  ode_opts.rel_tol = opts.rel_tol;
  ode_opts.abs_tol = opts.abs_tol;
  ode_opts.max_step = setup.max_step;
  ode_opts.max_steps = opts.max_steps;

  double x_cur = from;
  auto dphi_at = [&](double x) {
    if (variant == PhaseVariant::constant_k) return setup.k_inf;
    auto [lo, hi] = segment_of(x);
    const double ksq =
        wavenumber_squared(units, E, pot.v(nudge_inside(x, lo, hi)));
    if (ksq <= 0.0)
      fail(ErrorCode::turning_point, "E <= V inside the domain",
           "x=" + std::to_string(x));
    return std::sqrt(ksq);
  };
  auto residual_now = [&] {
    return std::abs(std::norm(st.a) - std::norm(st.b) - 1.0);
  };

  if (observe_steps || in_samples(from))
    on_point(from, st.a, st.b, st.phi, dphi_at(from), residual_now());

  for (double stop : stops) {
    if (stop != x_cur) {
      auto [seg_lo, seg_hi] = segment_of(0.5 * (x_cur + stop));
      auto rhs = [&, seg_lo, seg_hi](double x, const OdeState<3>& y,
                                     OdeState<3>& dydx) {
        const double xx = nudge_inside(x, seg_lo, seg_hi);
        const double ksq = wavenumber_squared(units, E, pot.v(xx));
        double dphi, ddphi;
        if (variant == PhaseVariant::constant_k) {
          dphi = setup.k_inf;
          ddphi = 0.0;
        } else {
          if (ksq <= 0.0)
            fail(ErrorCode::turning_point, "E <= V inside the domain",
                 "x=" + std::to_string(xx));
          dphi = std::sqrt(ksq);
          ddphi = -units.mass * pot.derivative(xx, seg_lo, seg_hi) /
                  (units.hbar * units.hbar * dphi);
        }
        auto [da, db] =
            sz_derivatives(y[0], y[1], y[2].real(), dphi, ddphi, ksq);
        dydx[0] = da;
        dydx[1] = db;
        dydx[2] = dphi;
      };

      OdeState<3> y{st.a, st.b, Complex{st.phi, 0.0}};
      OdeStats stats;
      auto observer = [&](double x, const OdeState<3>& yy) {
        const double res = std::abs(std::norm(yy[0]) - std::norm(yy[1]) - 1.0);
        st.max_residual = std::max(st.max_residual, res);
        if (observe_steps && x != x_cur)
          on_point(x, yy[0], yy[1], yy[2].real(), dphi_at(x), res);
      };
      y = integrate_ode<3>(rhs, y, x_cur, stop, ode_opts, &stats, observer);
      st.a = y[0];
      st.b = y[1];
      st.phi = y[2].real();
      st.accepted += stats.accepted;
      st.rejected += stats.rejected;
      x_cur = stop;
    }

    if (stop == to) break;

    if (std::binary_search(splice.begin(), splice.end(), stop)) {
      if (const DeltaSpike* sp = spike_at(stop)) {
        // spikes reach here only under the constant-k phase
        cross_spike(st.a, st.b, st.phi, setup.k_inf, sp->strength, units, dir);
      } else if (variant == PhaseVariant::wkb) {
        const double dphi_old = dphi_at(std::nextafter(stop, from));
        const double dphi_new = dphi_at(std::nextafter(stop, to));
        rebase_dphi(st.a, st.b, st.phi, dphi_old, dphi_new);
      }
    }
    if (!observe_steps && in_samples(stop))
      on_point(stop, st.a, st.b, st.phi, dphi_at(std::nextafter(stop, to)),
               residual_now());
  }

  if (!observe_steps && in_samples(to))
    on_point(to, st.a, st.b, st.phi, dphi_at(to), residual_now());
}

ScatteringResult finish_result(const Potential& pot, double E,
                               PhaseVariant variant,
                               const IntegratorOptions& opts,
                               const EngineSetup& setup, const RunState& st) {
  ScatteringResult out;
  out.phase = variant;
  out.energy = E;
  // re-anchor onto plane waves e^{+-i k- x} at the truncation point
  const double delta = st.phi - setup.k_minus * pot.x_lo;
  out.alpha = st.a * std::polar(1.0, delta);
  out.beta = st.b * std::polar(1.0, -delta);
  const double a2 = std::norm(out.alpha);
  out.T = 1.0 / a2;
  out.R = std::norm(out.beta) / a2;
  out.conservation_residual = st.max_residual;
  out.steps_accepted = st.accepted;
  out.steps_rejected = st.rejected;
  out.error_estimate =
      std::max(1e-14, static_cast<double>(st.accepted) * opts.rel_tol);
  return out;
}

}  // namespace

ScatteringResult integrate(const Potential& pot, const UnitsConfig& units,
                           double E, PhaseVariant phase,
                           const IntegratorOptions& opts) {
  const EngineSetup setup = prepare(pot, units, E, phase, opts);
  RunState st;
  st.phi = setup.k_plus * pot.x_hi;  // Jost terminal data (1, 0) at x_hi
  engine_run(pot, units, E, phase, opts, setup, pot.x_hi, pot.x_lo, st,
             /*observe_steps=*/false, nullptr,
             [](double, const Complex&, const Complex&, double, double,
                double) {});
  return finish_result(pot, E, phase, opts, setup, st);
}

ScatteringResult integrate_traced(const Potential& pot,
                                  const UnitsConfig& units, double E,
                                  PhaseVariant phase,
                                  std::vector<TracedState>& trace,
                                  const std::vector<double>* sample_at,
                                  const IntegratorOptions& opts) {
  const EngineSetup setup = prepare(pot, units, E, phase, opts);
  RunState st;
  st.phi = setup.k_plus * pot.x_hi;
  trace.clear();
  std::vector<double> samples;
  if (sample_at) {
    samples = *sample_at;
    std::sort(samples.begin(), samples.end());
  }
  auto record = [&](double x, const Complex& a, const Complex& b, double phi,
                    double dphi, double res) {
    trace.push_back({x, a, b, phi, dphi, res});
  };
  engine_run(pot, units, E, phase, opts, setup, pot.x_hi, pot.x_lo, st,
             /*observe_steps=*/sample_at == nullptr,
             sample_at ? &samples : nullptr, record);
  std::reverse(trace.begin(), trace.end());  // ascending in x
  return finish_result(pot, E, phase, opts, setup, st);
}

TransferMatrix transfer_matrix(const Potential& pot, const UnitsConfig& units,
                               double E, PhaseVariant phase, double x_i,
                               double x_f, const IntegratorOptions& opts) {
  if (x_i < pot.x_lo || x_i > pot.x_hi || x_f < pot.x_lo || x_f > pot.x_hi)
    fail(ErrorCode::invalid_config,
         "transfer matrix endpoints must lie inside the truncation interval");
  const EngineSetup setup = prepare(pot, units, E, phase, opts);
  const PhaseFunction ref = PhaseFunction::make(phase, pot, units, E);
  const double phi0 = ref.phi(x_i);

  TransferMatrix out;
  const Complex cols[2][2] = {{{1.0, 0.0}, {0.0, 0.0}},
                              {{0.0, 0.0}, {1.0, 0.0}}};
  for (int c = 0; c < 2; ++c) {
    RunState st;
    st.a = cols[c][0];
    st.b = cols[c][1];
    st.phi = phi0;
    if (x_i != x_f)
      engine_run(pot, units, E, phase, opts, setup, x_i, x_f, st, false,
                 nullptr,
                 [](double, const Complex&, const Complex&, double, double,
                    double) {});
    out.m[0][c] = st.a;
    out.m[1][c] = st.b;
  }
  return out;
}

std::vector<WaveSample> reconstruct_wavefunction(
    const std::vector<TracedState>& states) {
  std::vector<WaveSample> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    const Complex e = std::polar(1.0, s.phi);
    const double root = std::sqrt(s.dphi);
    WaveSample w;
    w.x = s.x;
    w.psi = (s.a * e + s.b * std::conj(e)) / root;
    w.dpsi = kI * root * (s.a * e - s.b * std::conj(e));
    out.push_back(w);
  }
  return out;
}

}  // namespace sz1d
