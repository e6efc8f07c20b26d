#include "scorelab/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scorelab/rng.hpp"
#include "scorelab/targets.hpp"

namespace scorelab {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::gaussian: return "gaussian";
    case FamilyKind::gaussian_mixture2: return "gaussian-mixture-2";
  }
  return "?";
}

FamilyKind family_kind_from(const std::string& name) {
  if (name == "gaussian") return FamilyKind::gaussian;
  if (name == "gaussian-mixture-2") return FamilyKind::gaussian_mixture2;
  throw std::invalid_argument("unknown family: " + name);
}

ParametricFamily ParametricFamily::gaussian(const Grid& grid) {
  return ParametricFamily(FamilyKind::gaussian, grid);
}

ParametricFamily ParametricFamily::gaussian_mixture2(const Grid& grid) {
  return ParametricFamily(FamilyKind::gaussian_mixture2, grid);
}

int ParametricFamily::param_count() const {
  return kind_ == FamilyKind::gaussian ? 2 : 5;
}

std::vector<std::string> ParametricFamily::param_names() const {
  if (kind_ == FamilyKind::gaussian) return {"mu", "sigma"};
  return {"weight", "mu1", "sigma1", "mu2", "sigma2"};
}

std::vector<ParametricFamily::Bound> ParametricFamily::bounds() const {
  const Bound location{grid_.lo, grid_.hi};
  const Bound scale{1e-3, grid_.hi - grid_.lo};
  if (kind_ == FamilyKind::gaussian) return {location, scale};
  return {{1e-6, 1.0 - 1e-6}, location, scale, location, scale};
}

bool ParametricFamily::in_bounds(std::span<const double> params) const {
  const auto b = bounds();
  if (params.size() != b.size()) return false;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!(params[i] >= b[i].lo && params[i] <= b[i].hi)) return false;
  return true;
}

GridDensity ParametricFamily::render(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != param_count())
    throw std::invalid_argument("parameter count mismatch");
  if (!in_bounds(params))
    throw std::invalid_argument("parameters outside family bounds");
  if (kind_ == FamilyKind::gaussian)
    return gaussian_density(grid_, params[0], params[1]);
  const double w = params[0];
  std::vector<double> v(grid_.n);
  const GridDensity a = gaussian_density(grid_, params[1], params[2]);
  const GridDensity b = gaussian_density(grid_, params[3], params[4]);
  for (int i = 0; i < grid_.n; ++i) v[i] = w * a[i] + (1.0 - w) * b[i];
  return GridDensity::from(grid_, std::move(v));
}

namespace {

// Transform between native parameters and the scaled coordinates the simplex
// moves in: locations stay linear, scales go through log, weights through
// logit.
enum class ParamKind { location, scale, weight };

std::vector<ParamKind> param_kinds(const ParametricFamily& family) {
  if (family.kind() == FamilyKind::gaussian)
    return {ParamKind::location, ParamKind::scale};
  return {ParamKind::weight, ParamKind::location, ParamKind::scale,
          ParamKind::location, ParamKind::scale};
}

double to_scaled(ParamKind kind, double v) {
  switch (kind) {
    case ParamKind::location: return v;
    case ParamKind::scale: return std::log(v);
    case ParamKind::weight: return std::log(v / (1.0 - v));
  }
  return v;
}

double from_scaled(ParamKind kind, double z) {
  switch (kind) {
    case ParamKind::location: return z;
    case ParamKind::scale: return std::exp(z);
    case ParamKind::weight: return 1.0 / (1.0 + std::exp(-z));
  }
  return z;
}

double initial_step(ParamKind kind) {
  switch (kind) {
    case ParamKind::location: return 0.5;
    case ParamKind::scale: return 0.25;
    case ParamKind::weight: return 0.5;
  }
  return 0.25;
}

// Empirical mean score of the rendered density over the sample.
class Objective {
 public:
  Objective(std::span<const double> samples, const ParametricFamily& family,
            DensityRule rule, std::vector<ParamKind> kinds)
      : samples_(samples), family_(family), rule_(rule),
        kinds_(std::move(kinds)) {}

  double operator()(std::span<const double> scaled) const {
    std::vector<double> params(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i)
      params[i] = from_scaled(kinds_[i], scaled[i]);
    if (!family_.in_bounds(params)) return kInf;
    const GridDensity f = family_.render(params);
    double total = 0.0;
    switch (rule_) {
      case DensityRule::log: {
        for (double x : samples_) {
          const double fx = f.at(x);
          if (!(fx > 0.0)) return kInf;
          total -= std::log(fx);
        }
        break;
      }
      case DensityRule::quadratic: {
        const double norm2 = inner_product(f, f);
        for (double x : samples_) total += norm2 - 2.0 * f.at(x);
        break;
      }
      case DensityRule::spherical: {
        const double norm = l2_norm(f);
        for (double x : samples_) total -= f.at(x) / norm;
        break;
      }
      case DensityRule::crps: {
        const CrpsEvaluator eval(cdf_of(f));
        for (double x : samples_) total += eval.at(x);
        break;
      }
    }
    return total / static_cast<double>(samples_.size());
  }

 private:
  std::span<const double> samples_;
  const ParametricFamily& family_;
  DensityRule rule_;
  std::vector<ParamKind> kinds_;
};

struct SimplexResult {
  std::vector<double> point;
  double value = kInf;
  int iterations = 0;
  bool converged = false;
};

// Standard Nelder-Mead with reflection 1, expansion 2, contraction 0.5,
// shrink 0.5. Stops when the simplex diameter in scaled coordinates falls
// below tol.
SimplexResult nelder_mead(const Objective& objective,
                          std::vector<double> start,
                          std::span<const double> steps, int max_iterations,
                          double tol) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += steps[i];
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = objective(simplex[i]);

  SimplexResult result;
  auto order = [&] {
    std::vector<std::size_t> idx(dim + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return idx;
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    const auto idx = order();
    // reorder in place
    {
      std::vector<std::vector<double>> s(dim + 1);
      std::vector<double> v(dim + 1);
      for (std::size_t i = 0; i <= dim; ++i) {
        s[i] = simplex[idx[i]];
        v[i] = values[idx[i]];
      }
      simplex = std::move(s);
      values = std::move(v);
    }

    double diameter = 0.0;
    for (std::size_t i = 1; i <= dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        diameter = std::max(diameter,
                            std::abs(simplex[i][k] - simplex[0][k]));
    result.iterations = iter;
    if (diameter < tol) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        centroid[k] += simplex[i][k] / static_cast<double>(dim);

    auto blend = [&](double coeff) {
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k)
        p[k] = centroid[k] + coeff * (simplex[dim][k] - centroid[k]);
      return p;
    };

    const std::vector<double> reflected = blend(-1.0);
    const double reflected_value = objective(reflected);
    if (reflected_value < values[0]) {
      const std::vector<double> expanded = blend(-2.0);
      const double expanded_value = objective(expanded);
      if (expanded_value < reflected_value) {
        simplex[dim] = expanded;
        values[dim] = expanded_value;
      } else {
        simplex[dim] = reflected;
        values[dim] = reflected_value;
      }
    } else if (reflected_value < values[dim - 1]) {
      simplex[dim] = reflected;
      values[dim] = reflected_value;
    } else {
      const bool outside = reflected_value < values[dim];
      const std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
      const double contracted_value = objective(contracted);
      if (contracted_value < std::min(reflected_value, values[dim])) {
        simplex[dim] = contracted;
        values[dim] = contracted_value;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t k = 0; k < dim; ++k)
            simplex[i][k] = 0.5 * (simplex[i][k] + simplex[0][k]);
          values[i] = objective(simplex[i]);
        }
      }
    }
  }

  const auto best = std::min_element(values.begin(), values.end());
  result.value = *best;
  result.point = simplex[best - values.begin()];
  return result;
}

std::vector<double> moment_start(std::span<const double> samples,
                                 const ParametricFamily& family) {
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= static_cast<double>(samples.size());
  const double sd = std::max(std::sqrt(var), 1e-3);
  if (family.kind() == FamilyKind::gaussian) return {mean, sd};
  return {0.5, mean - sd, 0.8 * sd, mean + sd, 0.8 * sd};
}

}  // namespace

EstimationResult min_score_fit(std::span<const double> samples,
                               const ParametricFamily& family,
                               DensityRule rule, const FitConfig& cfg) {
  if (samples.size() < 10)
    throw std::invalid_argument("need at least 10 samples");
  for (double x : samples)
    if (!family.grid().contains(x))
      throw std::invalid_argument("sample " + std::to_string(x) +
                                  " outside the grid domain");
  if (cfg.restarts < 1 || cfg.max_iterations < 1 || !(cfg.diameter_tol > 0.0))
    throw std::invalid_argument("bad fit configuration");

  const auto kinds = param_kinds(family);
  const Objective objective(samples, family, rule, kinds);

  const std::vector<double> start_native = moment_start(samples, family);
  std::vector<double> start_scaled(start_native.size());
  for (std::size_t i = 0; i < kinds.size(); ++i)
    start_scaled[i] = to_scaled(kinds[i], start_native[i]);

  EstimationResult result;
  result.rule = rule;
  int total_iterations = 0;
  double best_value = kInf;
  std::vector<double> best_point;
  bool any_converged = false;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::vector<double> start = start_scaled;
    std::vector<double> steps(kinds.size());
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      steps[i] = initial_step(kinds[i]);
      if (restart > 0) {
        const double jitter = uniform01(
            cfg.seed, static_cast<std::uint64_t>(restart) * kinds.size() + i);
        start[i] += (jitter - 0.5) * steps[i];
      }
    }
    const SimplexResult fit =
        nelder_mead(objective, start, steps, cfg.max_iterations,
                    cfg.diameter_tol);
    total_iterations += fit.iterations;
    any_converged = any_converged || fit.converged;
    if (fit.value < best_value) {
      best_value = fit.value;
      best_point = fit.point;
    }
  }

  result.params.resize(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i)
    result.params[i] = from_scaled(kinds[i], best_point[i]);
  result.final_score = best_value;
  result.iterations = total_iterations;
  result.converged = any_converged;
  return result;
}

namespace {

// Shared ranking core: scores[model][case] with +inf marking per-case
// domain failures; a case every model fails on is dropped entirely.
RankingOutcome build_ranking(const std::string& rule_name,
                             std::vector<std::vector<double>> scores,
                             std::vector<std::vector<bool>> failed) {
  const std::size_t model_count = scores.size();
  const std::size_t case_count = scores.empty() ? 0 : scores[0].size();
  RankingOutcome outcome;

  std::vector<bool> keep(case_count, true);
  for (std::size_t c = 0; c < case_count; ++c) {
    bool all_failed = model_count > 0;
    for (std::size_t m = 0; m < model_count; ++m)
      if (!failed[m][c]) all_failed = false;
    if (all_failed) {
      keep[c] = false;
      outcome.skipped_cases.push_back(static_cast<int>(c));
    }
  }

  std::vector<RankedModel> ranked;
  for (std::size_t m = 0; m < model_count; ++m) {
    std::vector<double> kept;
    kept.reserve(case_count);
    for (std::size_t c = 0; c < case_count; ++c)
      if (keep[c]) kept.push_back(scores[m][c]);
    RankedModel rm;
    rm.model = static_cast<int>(m);
    rm.report = ScoreReport::from(rule_name, std::move(kept));
    ranked.push_back(std::move(rm));
  }

  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedModel& a, const RankedModel& b) {
                     return a.report.mean < b.report.mean;
                   });
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (i > 0 && std::abs(ranked[i].report.mean -
                          ranked[i - 1].report.mean) <= 1e-12)
      ranked[i].rank = ranked[i - 1].rank;
    else
      ranked[i].rank = static_cast<int>(i) + 1;
  }
  outcome.models = std::move(ranked);
  return outcome;
}

}  // namespace

RankingOutcome rank_models(const std::vector<ProbVector>& forecasts,
                           std::span<const CategoricalOutcome> outcomes,
                           CategoricalRule rule) {
  if (forecasts.empty()) throw std::invalid_argument("no models to rank");
  std::vector<std::vector<double>> scores(
      forecasts.size(), std::vector<double>(outcomes.size()));
  std::vector<std::vector<bool>> failed(
      forecasts.size(), std::vector<bool>(outcomes.size(), false));
  for (std::size_t m = 0; m < forecasts.size(); ++m)
    for (std::size_t c = 0; c < outcomes.size(); ++c) {
      try {
        scores[m][c] = score(rule, forecasts[m], outcomes[c]);
      } catch (const std::domain_error&) {
        scores[m][c] = kInf;
        failed[m][c] = true;
      }
    }
  return build_ranking(to_string(rule), std::move(scores), std::move(failed));
}

RankingOutcome rank_models(const std::vector<GridDensity>& forecasts,
                           std::span<const double> outcomes,
                           DensityRule rule) {
  if (forecasts.empty()) throw std::invalid_argument("no models to rank");
  std::vector<std::vector<double>> scores(
      forecasts.size(), std::vector<double>(outcomes.size()));
  std::vector<std::vector<bool>> failed(
      forecasts.size(), std::vector<bool>(outcomes.size(), false));
  for (std::size_t m = 0; m < forecasts.size(); ++m) {
    // precompute the CRPS running integrals once per model
    if (rule == DensityRule::crps) {
      const CrpsEvaluator eval(cdf_of(forecasts[m]));
      for (std::size_t c = 0; c < outcomes.size(); ++c) {
        try {
          scores[m][c] = eval.at(outcomes[c]);
        } catch (const std::domain_error&) {
          scores[m][c] = kInf;
          failed[m][c] = true;
        }
      }
      continue;
    }
    for (std::size_t c = 0; c < outcomes.size(); ++c) {
      try {
        scores[m][c] = score(rule, forecasts[m], outcomes[c]);
      } catch (const std::domain_error&) {
        scores[m][c] = kInf;
        failed[m][c] = true;
      }
    }
  }
  return build_ranking(to_string(rule), std::move(scores), std::move(failed));
}

}  // namespace scorelab
