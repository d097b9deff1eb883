#pragma once

#include <vector>

namespace sz1d {

// Natural cubic spline through strictly increasing abscissae. Evaluation
// clamps to the boundary values outside the data range so tabulated
// potentials stay flat beyond their last samples.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_front() const { return xs_.front(); }
  double x_back() const { return xs_.back(); }

 private:
  std::size_t interval(double x) const;
  std::vector<double> xs_, ys_, m_;  // m_: second derivatives at the knots
};

}  // namespace sz1d
