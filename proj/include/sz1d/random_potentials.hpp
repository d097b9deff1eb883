#pragma once

#include <cstdint>

#include "sz1d/potential.hpp"

namespace sz1d {

// Seeded smooth random potential: a sum of 1-4 Gaussian bumps with random
// signs, centers and widths, flat (V = 0) at both ends. Deterministic in
// (seed, index); used by the dominance property suites.
Potential random_gaussian_bumps(std::uint64_t seed, std::uint32_t index);

}  // namespace sz1d
