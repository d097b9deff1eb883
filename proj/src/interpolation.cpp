#include "sz1d/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "sz1d/errors.hpp"

namespace sz1d {

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n)
    fail(ErrorCode::invalid_config, "spline needs >= 2 matching (x, y) pairs");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(xs_[i] < xs_[i + 1]))
      fail(ErrorCode::invalid_config, "spline abscissae must strictly increase");

  m_.assign(n, 0.0);
  if (n == 2) return;

  // Thomas solve of the natural-spline tridiagonal system
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = xs_[i] - xs_[i - 1];
    const double h1 = xs_[i + 1] - xs_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double h0 = xs_[i] - xs_[i - 1];
    const double w = h0 / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

std::size_t CubicSpline::interval(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.begin()) return 0;
  if (it == xs_.end()) return xs_.size() - 2;
  return static_cast<std::size_t>(it - xs_.begin()) - 1;
}

double CubicSpline::operator()(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const std::size_t i = interval(x);
  const double h = xs_[i + 1] - xs_[i];
  const double A = (xs_[i + 1] - x) / h;
  const double B = (x - xs_[i]) / h;
  return A * ys_[i] + B * ys_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  if (x <= xs_.front() || x >= xs_.back()) return 0.0;
  const std::size_t i = interval(x);
  const double h = xs_[i + 1] - xs_[i];
  const double A = (xs_[i + 1] - x) / h;
  const double B = (x - xs_[i]) / h;
  return (ys_[i + 1] - ys_[i]) / h -
         (3.0 * A * A - 1.0) * h * m_[i] / 6.0 +
         (3.0 * B * B - 1.0) * h * m_[i + 1] / 6.0;
}

}  // namespace sz1d
