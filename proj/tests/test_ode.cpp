#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sz1d/ode.hpp"

using namespace sz1d;

TEST_CASE("exponential growth forward and backward") {
  auto rhs = [](double, const OdeState<1>& y, OdeState<1>& dy) {
    dy[0] = y[0];
  };
  OdeOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;

  OdeState<1> y0{std::complex<double>{1.0, 0.0}};
  auto y = integrate_ode<1>(rhs, y0, 0.0, 2.0, opt);
  CHECK(std::abs(y[0] - std::exp(2.0)) < 1e-9);

  y = integrate_ode<1>(rhs, y0, 0.0, -2.0, opt);
  CHECK(std::abs(y[0] - std::exp(-2.0)) < 1e-12);
}

TEST_CASE("harmonic oscillator stays on the circle") {
  // y'' = -y as a first-order complex system: z' = i z, z = e^{i x}
  auto rhs = [](double, const OdeState<1>& y, OdeState<1>& dy) {
    dy[0] = std::complex<double>{0.0, 1.0} * y[0];
  };
  OdeOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-13;
  OdeState<1> y0{std::complex<double>{1.0, 0.0}};
  const double x1 = 50.0;
  auto y = integrate_ode<1>(rhs, y0, 0.0, x1, opt);
  CHECK(std::abs(y[0] - std::polar(1.0, x1)) < 1e-7);
  CHECK(std::abs(std::abs(y[0]) - 1.0) < 1e-8);
}

TEST_CASE("max_step is honored") {
  auto rhs = [](double, const OdeState<1>& y, OdeState<1>& dy) {
    dy[0] = y[0];
  };
  OdeOptions opt;
  opt.max_step = 0.01;
  double prev = 0.0;
  double largest = 0.0;
  bool first = true;
  OdeState<1> y0{std::complex<double>{1.0, 0.0}};
  integrate_ode<1>(rhs, y0, 0.0, 1.0, opt, nullptr,
                   [&](double x, const OdeState<1>&) {
                     if (!first) largest = std::max(largest, x - prev);
                     first = false;
                     prev = x;
                   });
  CHECK(largest <= 0.01 + 1e-12);
}

TEST_CASE("tolerance controls the error") {
  auto rhs = [](double x, const OdeState<1>& y, OdeState<1>& dy) {
    dy[0] = std::cos(x) * y[0];  // y = exp(sin x)
  };
  OdeState<1> y0{std::complex<double>{1.0, 0.0}};
  const double exact = std::exp(std::sin(3.0));
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    OdeOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = tol * 1e-2;
    auto y = integrate_ode<1>(rhs, y0, 0.0, 3.0, opt);
    CHECK(std::abs(y[0].real() - exact) < 1e3 * tol);
  }
}

TEST_CASE("step budget exhaustion raises ToleranceNotMet") {
  auto rhs = [](double, const OdeState<1>& y, OdeState<1>& dy) {
    dy[0] = y[0];
  };
  OdeOptions opt;
  opt.max_steps = 10;
  opt.max_step = 1e-6;
  OdeState<1> y0{std::complex<double>{1.0, 0.0}};
  CHECK_THROWS_AS(integrate_ode<1>(rhs, y0, 0.0, 1.0, opt), Error);
  try {
    integrate_ode<1>(rhs, y0, 0.0, 1.0, opt);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::tolerance_not_met);
  }
}
