// Numerical verification harness: sweeps parameter grids and perturbation
// families, checks every preference/indifference claim of the forecast-pair
// analysis, and reports one verdict per case.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scorelab/continuous.hpp"
#include "scorelab/core.hpp"
#include "scorelab/perturb.hpp"

namespace scorelab {

enum class Verdict { holds, violated, indifferent, out_of_hypothesis };

std::string to_string(Verdict v);
Verdict verdict_from(const std::string& name);

/// One checked claim instance. `margin` measures the distance from the
/// indifference boundary: for inequality claims it is the favorable gap
/// (positive supports the claim), for equality claims the absolute
/// discrepancy (small supports the claim). Every case is reproducible from
/// its labels and inputs.
struct VerificationCase {
  std::string proposition;
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> computed;
  Verdict verdict = Verdict::holds;
  double margin = 0.0;
};

struct SweepConfig {
  int grid_steps = 9;
  double tolerance = 1e-12;
  std::uint64_t seed = 42;

  // binary sweep: grid_steps values of p in [p_min, p_max] and grid_steps
  // gamma fractions strictly inside (0, 1)
  double p_min = 0.55;
  double p_max = 0.95;

  // density sweep
  std::vector<double> mixture_weights{0.55, 0.65, 0.75};
  std::vector<double> mixture_separations{0.5, 1.0};
  std::vector<double> eps_fractions{0.1, 0.5, 0.9};
  Grid grid{-8.0, 8.0, 2049};
  bool refine_check = true;

  static SweepConfig binary_defaults();
  static SweepConfig density_defaults();
  void validate() const;
  std::vector<double> gamma_fractions() const;
};

std::vector<VerificationCase> verify_binary(const SweepConfig& cfg);

struct DensityVerifyRun {
  std::vector<VerificationCase> cases;
  /// Set when re-running the sweep at 2n-1 grid points flips any verdict.
  bool quadrature_failure = false;
};

DensityVerifyRun verify_density(const SweepConfig& cfg);

/// Scalar indifference point along c * gamma2: the c* in (0, 1) where
/// H(c* gamma2, gamma2) = 0, found by bisection after verifying the
/// endpoint signs H(0, g2) < 0 < H(g2, g2).
double gamma_star_density(const GridDensity& p, const OddPerturbation& gamma2,
                          double tol = 1e-12);

}  // namespace scorelab
