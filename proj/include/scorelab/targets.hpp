// Reference target densities used by the verification sweeps and fits.
#pragma once

#include "scorelab/core.hpp"

namespace scorelab {

/// N(mean, sigma^2) sampled on the grid and trapezoid-renormalized.
GridDensity gaussian_density(const Grid& grid, double mean, double sigma);

/// weight * N(-separation, 1) + (1 - weight) * N(separation, 1), sampled on
/// the grid and renormalized. For weight > 0.5 the mixture is left-weighted:
/// p(x) >= p(-x) for x < 0.
GridDensity mixture_density(const Grid& grid, double weight,
                            double separation);

/// Uniform density over [grid.lo, grid.hi].
GridDensity uniform_density(const Grid& grid);

}  // namespace scorelab
