#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "sz1d/errors.hpp"

namespace sz1d {

// Adaptive Dormand-Prince 5(4) over a fixed-size complex state. Integrates in
// either direction (x1 may be below x0) and honors a hard cap on |h|, which
// the scattering engine uses to keep steps below a fraction of the local
// oscillation period of exp(+-2i phi).
template <std::size_t N>
using OdeState = std::array<std::complex<double>, N>;

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 20'000'000;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace detail {

template <std::size_t N>
void axpy(OdeState<N>& y, double c, const OdeState<N>& k) {
  for (std::size_t i = 0; i < N; ++i) y[i] += c * k[i];
}

}  // namespace detail

// rhs(x, y, dydx); observer(x, y) fires at the initial point and after every
// accepted step. Returns the state at x1.
template <std::size_t N, class Rhs, class Observer>
OdeState<N> integrate_ode(Rhs&& rhs, OdeState<N> y, double x0, double x1,
                          const OdeOptions& opt, OdeStats* stats,
                          Observer&& observer) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b*: weights of the embedded error estimate (the 7th stage is FSAL).
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = x1 - x0;
  if (span == 0.0) {
    observer(x0, y);
    return y;
  }
  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double span_abs = std::abs(span);

  double h = dir * std::min({opt.max_step, span_abs / 50.0, 1.0});
  double x = x0;

  OdeState<N> k1, k2, k3, k4, k5, k6, k7, ytmp, y5;
  rhs(x, y, k1);
  observer(x, y);

  std::size_t steps = 0;
  while (dir * (x1 - x) > 0.0) {
    if (++steps > opt.max_steps)
      fail(ErrorCode::tolerance_not_met, "step budget exhausted",
           "x=" + std::to_string(x));
    if (std::abs(h) < 64.0 * std::numeric_limits<double>::epsilon() *
                          std::max(std::abs(x), 1.0))
      fail(ErrorCode::tolerance_not_met, "step size underflow",
           "x=" + std::to_string(x));
    if (dir * (x + h - x1) > 0.0) h = x1 - x;

    ytmp = y;
    detail::axpy(ytmp, h * a21, k1);
    rhs(x + h / 5.0, ytmp, k2);

    ytmp = y;
    detail::axpy(ytmp, h * a31, k1);
    detail::axpy(ytmp, h * a32, k2);
    rhs(x + 3.0 * h / 10.0, ytmp, k3);

    ytmp = y;
    detail::axpy(ytmp, h * a41, k1);
    detail::axpy(ytmp, h * a42, k2);
    detail::axpy(ytmp, h * a43, k3);
    rhs(x + 4.0 * h / 5.0, ytmp, k4);

    ytmp = y;
    detail::axpy(ytmp, h * a51, k1);
    detail::axpy(ytmp, h * a52, k2);
    detail::axpy(ytmp, h * a53, k3);
    detail::axpy(ytmp, h * a54, k4);
    rhs(x + 8.0 * h / 9.0, ytmp, k5);

    ytmp = y;
    detail::axpy(ytmp, h * a61, k1);
    detail::axpy(ytmp, h * a62, k2);
    detail::axpy(ytmp, h * a63, k3);
    detail::axpy(ytmp, h * a64, k4);
    detail::axpy(ytmp, h * a65, k5);
    rhs(x + h, ytmp, k6);

    y5 = y;
    detail::axpy(y5, h * b1, k1);
    detail::axpy(y5, h * b3, k3);
    detail::axpy(y5, h * b4, k4);
    detail::axpy(y5, h * b5, k5);
    detail::axpy(y5, h * b6, k6);
    rhs(x + h, y5, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const std::complex<double> ei =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
               e6 * k6[i] + e7 * k7[i]);
      const double scale =
          opt.abs_tol +
          opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double r = std::abs(ei) / scale;
      err += r * r;
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err <= 1.0) {
      x += h;
      y = y5;
      k1 = k7;  // FSAL
      if (stats) ++stats->accepted;
      observer(x, y);
    } else if (stats) {
      ++stats->rejected;
    }

    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-300), -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
  }
  return y;
}

template <std::size_t N, class Rhs>
OdeState<N> integrate_ode(Rhs&& rhs, OdeState<N> y, double x0, double x1,
                          const OdeOptions& opt, OdeStats* stats = nullptr) {
  return integrate_ode<N>(static_cast<Rhs&&>(rhs), y, x0, x1, opt, stats,
                          [](double, const OdeState<N>&) {});
}

}  // namespace sz1d
