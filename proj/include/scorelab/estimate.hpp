// Minimum-score estimation: fit a parametric density family to a sample by
// minimizing the empirical mean of a scoring rule, and rank competing
// forecasts by mean score.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scorelab/categorical.hpp"
#include "scorelab/continuous.hpp"
#include "scorelab/core.hpp"

namespace scorelab {

enum class FamilyKind { gaussian, gaussian_mixture2 };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from(const std::string& name);

/// Parametric density family rendered onto a fixed grid. Scale parameters
/// are optimized in log space; the mixture weight in logit space.
class ParametricFamily {
 public:
  struct Bound {
    double lo;
    double hi;
  };

  static ParametricFamily gaussian(const Grid& grid);
  static ParametricFamily gaussian_mixture2(const Grid& grid);

  FamilyKind kind() const { return kind_; }
  const Grid& grid() const { return grid_; }
  int param_count() const;
  std::vector<std::string> param_names() const;
  std::vector<Bound> bounds() const;
  bool in_bounds(std::span<const double> params) const;
  GridDensity render(std::span<const double> params) const;

 private:
  ParametricFamily(FamilyKind kind, Grid grid) : kind_(kind), grid_(grid) {}
  FamilyKind kind_;
  Grid grid_;
};

struct FitConfig {
  std::uint64_t seed = 42;
  int restarts = 3;
  int max_iterations = 600;    // per restart
  double diameter_tol = 1e-6;  // simplex diameter in scaled parameters
};

struct EstimationResult {
  DensityRule rule = DensityRule::log;
  std::vector<double> params;
  double final_score = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free simplex search restarted from jittered initial points;
/// the best restart wins. Non-convergence returns the best point found with
/// converged = false rather than throwing.
EstimationResult min_score_fit(std::span<const double> samples,
                               const ParametricFamily& family,
                               DensityRule rule, const FitConfig& cfg = {});

struct RankedModel {
  int model = 0;  // index into the input forecast sequence
  int rank = 1;   // 1-based; models within 1e-12 of each other share rank
  ScoreReport report;
};

struct RankingOutcome {
  std::vector<RankedModel> models;  // ascending mean score
  std::vector<int> skipped_cases;   // outcomes no model could score
};

RankingOutcome rank_models(const std::vector<ProbVector>& forecasts,
                           std::span<const CategoricalOutcome> outcomes,
                           CategoricalRule rule);
RankingOutcome rank_models(const std::vector<GridDensity>& forecasts,
                           std::span<const double> outcomes, DensityRule rule);

}  // namespace scorelab
