// Shared fixtures and independent oracles for the test suites. Oracles here
// intentionally avoid the library code paths they are used to check.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "scorelab/core.hpp"
#include "scorelab/rng.hpp"
#include "scorelab/targets.hpp"

namespace scorelab::testing {

inline Grid default_grid() { return Grid{-8.0, 8.0, 2049}; }

/// Deterministic inverse-CDF sample of size count from the target CDF.
inline std::vector<double> sample_from(const GridCDF& cdf, std::size_t count,
                                       std::uint64_t seed) {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i)
    xs[i] = quantile(cdf, uniform01(seed, i));
  return xs;
}

struct MonteCarlo {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Mean and standard error of a pointwise score over draws from the target.
inline MonteCarlo monte_carlo_mean(const GridCDF& target_cdf,
                                   const std::function<double(double)>& score,
                                   std::size_t count, std::uint64_t seed) {
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double s = score(quantile(target_cdf, uniform01(seed, i)));
    sum += s;
    sum_sq += s * s;
  }
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  const double variance = std::max(sum_sq / n - mean * mean, 0.0);
  return {mean, std::sqrt(variance / n)};
}

/// Centered finite difference at step h.
inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double sample_mean(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

/// Maximum-likelihood (biased) standard deviation.
inline double sample_sd_biased(std::span<const double> xs) {
  const double mean = sample_mean(xs);
  double sum = 0.0;
  for (double x : xs) sum += (x - mean) * (x - mean);
  return std::sqrt(sum / static_cast<double>(xs.size()));
}

}  // namespace scorelab::testing
