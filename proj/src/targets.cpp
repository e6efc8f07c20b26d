#include "scorelab/targets.hpp"

#include <cmath>

namespace scorelab {

namespace {

double normal_pdf(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

}  // namespace

GridDensity gaussian_density(const Grid& grid, double mean, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  std::vector<double> v(grid.n);
  for (int i = 0; i < grid.n; ++i) v[i] = normal_pdf(grid.x(i), mean, sigma);
  const double total = trapezoid(grid, v);
  for (double& x : v) x /= total;
  return GridDensity::from(grid, std::move(v));
}

GridDensity mixture_density(const Grid& grid, double weight,
                            double separation) {
  if (!(weight >= 0.0 && weight <= 1.0))
    throw std::invalid_argument("mixture weight must lie in [0, 1]");
  std::vector<double> v(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    v[i] = weight * normal_pdf(x, -separation, 1.0) +
           (1.0 - weight) * normal_pdf(x, separation, 1.0);
  }
  const double total = trapezoid(grid, v);
  for (double& x : v) x /= total;
  return GridDensity::from(grid, std::move(v));
}

GridDensity uniform_density(const Grid& grid) {
  const double h = 1.0 / (grid.hi - grid.lo);
  return GridDensity::from(grid, std::vector<double>(grid.n, h));
}

}  // namespace scorelab
