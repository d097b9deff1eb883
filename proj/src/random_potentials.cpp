#include "sz1d/random_potentials.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace sz1d {

Potential random_gaussian_bumps(std::uint64_t seed, std::uint32_t index) {
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (index + 1));
  std::uniform_int_distribution<int> n_dist(1, 4);
  std::uniform_real_distribution<double> amp_dist(0.05, 0.6);
  std::uniform_real_distribution<double> center_dist(-4.0, 4.0);
  std::uniform_real_distribution<double> width_dist(0.5, 2.0);
  std::bernoulli_distribution sign_dist(0.5);

  struct Bump {
    double amp, center, width;
  };
  std::vector<Bump> bumps;
  const int n = n_dist(rng);
  for (int i = 0; i < n; ++i) {
    Bump b;
    b.amp = amp_dist(rng) * (sign_dist(rng) ? 1.0 : -1.0);
    b.center = center_dist(rng);
    b.width = width_dist(rng);
    bumps.push_back(b);
  }

  Potential pot;
  pot.v = [bumps](double x) {
    double v = 0.0;
    for (const auto& b : bumps) {
      const double u = (x - b.center) / b.width;
      v += b.amp * std::exp(-0.5 * u * u);
    }
    return v;
  };
  pot.dv = [bumps](double x) {
    double d = 0.0;
    for (const auto& b : bumps) {
      const double u = (x - b.center) / b.width;
      d += -b.amp * u / b.width * std::exp(-0.5 * u * u);
    }
    return d;
  };
  double lo = -6.0, hi = 6.0;
  for (const auto& b : bumps) {
    lo = std::min(lo, b.center - 9.0 * b.width);
    hi = std::max(hi, b.center + 9.0 * b.width);
  }
  pot.x_lo = lo;
  pot.x_hi = hi;
  pot.tail_tolerance = 1e-10;
  pot.name = "random_bumps_" + std::to_string(index);
  return pot;
}

}  // namespace sz1d
