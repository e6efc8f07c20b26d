// Density-forecast scoring rules (quadratic, logarithmic, spherical, CRPS),
// their expected values under a known target density, and the grid-level
// diagnostics of the odd-perturbation analysis.
#pragma once

#include <string>

#include "scorelab/core.hpp"

namespace scorelab {

/// A target density p with an odd departure gamma; the derived forecasts are
/// f_plus = p + gamma and f_minus = p - gamma.
class DensityForecastPair {
 public:
  static DensityForecastPair from(GridDensity target, OddPerturbation gamma);

  const GridDensity& target() const { return target_; }
  const OddPerturbation& gamma() const { return gamma_; }
  GridDensity plus() const;
  GridDensity minus() const;

 private:
  DensityForecastPair(GridDensity target, OddPerturbation gamma)
      : target_(std::move(target)), gamma_(std::move(gamma)) {}
  GridDensity target_;
  OddPerturbation gamma_;
};

enum class DensityRule { quadratic, log, spherical, crps };

std::string to_string(DensityRule rule);
DensityRule density_rule_from(const std::string& name);

/// ||f||_2^2 - 2 f(x) with f(x) by linear interpolation.
double quadratic_score(const GridDensity& f, double x);
/// ||f - p||_2^2 - ||p||_2^2.
double expected_quadratic(const GridDensity& f, const GridDensity& p);

/// -log f(x); +inf when the forecast density vanishes at the outcome.
double log_score(const GridDensity& f, double x);
/// Trapezoid quadrature of -int p log f; +inf if f = 0 somewhere p > 0.
double expected_log(const GridDensity& f, const GridDensity& p);

/// E[LS]_pm = int p log((p - gamma)/(p + gamma)); the expected-log-score gap
/// between f_plus and f_minus.
double expected_ls_gap(const DensityForecastPair& pair);

/// -f(x) / ||f||_2.
double spherical_score(const GridDensity& f, double x);
/// -<f, p> / ||f||_2.
double expected_spherical(const GridDensity& f, const GridDensity& p);

/// Precomputed running integrals of F^2 and (F-1)^2 for repeated CRPS
/// evaluation against one forecast CDF; crps(F, x) delegates here.
class CrpsEvaluator {
 public:
  explicit CrpsEvaluator(const GridCDF& F);
  double at(double x) const;
  /// CRPS with the outcome exactly at grid node i.
  double at_node(int i) const { return below_[i] + above_.back() - above_[i]; }

 private:
  Grid grid_;
  std::vector<double> cdf_;
  std::vector<double> below_;  // running int F^2
  std::vector<double> above_;  // running int (F-1)^2
};

/// int_lo^x F^2 + int_x^hi (F-1)^2, splitting the cell containing x.
double crps(const GridCDF& F, double x);
/// int P(1-P) + int (F-P)^2 with P = cdf_of(p).
double expected_crps(const GridCDF& F, const GridDensity& p);

/// int p Gamma^2 where Gamma is the running integral of sign * gamma.
double mse_criterion(const DensityForecastPair& pair, int sign);

/// H(g1, g2) = int p log((p - g2)/(p + g1)).
double h_functional(const GridDensity& p, const OddPerturbation& gamma1,
                    const OddPerturbation& gamma2);

/// Pointwise score under one rule; for crps the forecast CDF is derived
/// internally (use CrpsEvaluator for batches).
double score(DensityRule rule, const GridDensity& f, double x);
/// Expected score dispatcher matching the pointwise dispatcher.
double expected_score(DensityRule rule, const GridDensity& f,
                      const GridDensity& p);

}  // namespace scorelab
