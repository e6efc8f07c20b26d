#include <doctest.h>

#include <cmath>

#include "scorelab/estimate.hpp"
#include "scorelab/perturb.hpp"
#include "testutil.hpp"

using namespace scorelab;
using namespace scorelab::testing;

TEST_CASE("families render valid densities across their bounds") {
  const Grid grid = default_grid();
  const ParametricFamily gaussian = ParametricFamily::gaussian(grid);
  CHECK(gaussian.param_count() == 2);
  for (double mu : {-6.0, -1.0, 0.0, 3.5})
    for (double sigma : {0.05, 0.7, 2.5})
      CHECK_NOTHROW(gaussian.render(std::vector<double>{mu, sigma}));
  CHECK_THROWS_AS(gaussian.render(std::vector<double>{0.0, -1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(gaussian.render(std::vector<double>{0.0}),
                  std::invalid_argument);

  const ParametricFamily mixture = ParametricFamily::gaussian_mixture2(grid);
  CHECK(mixture.param_count() == 5);
  CHECK_NOTHROW(
      mixture.render(std::vector<double>{0.6, -1.0, 1.0, 2.0, 0.5}));
  CHECK_THROWS_AS(
      mixture.render(std::vector<double>{1.5, -1.0, 1.0, 2.0, 0.5}),
      std::invalid_argument);
}

TEST_CASE("minimum log score reproduces maximum likelihood") {
  const Grid grid = default_grid();
  const GridCDF cdf = cdf_of(gaussian_density(grid, -0.4, 1.3));
  const std::vector<double> samples = sample_from(cdf, 5000, 31);

  const EstimationResult fit = min_score_fit(
      samples, ParametricFamily::gaussian(grid), DensityRule::log);
  CHECK(fit.converged);
  CHECK(std::abs(fit.params[0] - sample_mean(samples)) < 1e-3);
  CHECK(std::abs(fit.params[1] - sample_sd_biased(samples)) < 1e-3);
}

TEST_CASE("fit never ends worse than its moment start") {
  const Grid grid = default_grid();
  const GridCDF cdf = cdf_of(mixture_density(grid, 0.7, 1.5));
  const std::vector<double> samples = sample_from(cdf, 2000, 77);
  const ParametricFamily family = ParametricFamily::gaussian(grid);

  for (auto rule : {DensityRule::log, DensityRule::quadratic,
                    DensityRule::spherical, DensityRule::crps}) {
    const EstimationResult fit = min_score_fit(samples, family, rule);
    // objective at the moment start
    const GridDensity start = family.render(std::vector<double>{
        sample_mean(samples), sample_sd_biased(samples)});
    double start_score = 0.0;
    if (rule == DensityRule::crps) {
      const CrpsEvaluator eval(cdf_of(start));
      for (double x : samples) start_score += eval.at(x);
      start_score /= static_cast<double>(samples.size());
    } else {
      double total = 0.0;
      for (double x : samples) total += score(rule, start, x);
      start_score = total / static_cast<double>(samples.size());
    }
    INFO(to_string(rule));
    CHECK(fit.final_score <= start_score + 1e-12);
  }
}

TEST_CASE("crps and log fits agree on the center of symmetric data") {
  const Grid grid = default_grid();
  const GridCDF cdf = cdf_of(gaussian_density(grid, 0.3, 1.0));
  const std::vector<double> samples = sample_from(cdf, 4000, 5);

  const ParametricFamily family = ParametricFamily::gaussian(grid);
  const EstimationResult log_fit =
      min_score_fit(samples, family, DensityRule::log);
  const EstimationResult crps_fit =
      min_score_fit(samples, family, DensityRule::crps);
  const double standard_error =
      sample_sd_biased(samples) / std::sqrt(4000.0);
  CHECK(std::abs(log_fit.params[0] - crps_fit.params[0]) <=
        2.0 * standard_error);
}

TEST_CASE("non-convergence is reported, not thrown") {
  const Grid grid = default_grid();
  const GridCDF cdf = cdf_of(gaussian_density(grid, 0.0, 1.0));
  const std::vector<double> samples = sample_from(cdf, 500, 9);
  FitConfig cfg;
  cfg.max_iterations = 2;
  const EstimationResult fit = min_score_fit(
      samples, ParametricFamily::gaussian(grid), DensityRule::log, cfg);
  CHECK_FALSE(fit.converged);
  CHECK(fit.params.size() == 2);
}

TEST_CASE("fit rejects bad input") {
  const Grid grid = default_grid();
  const ParametricFamily family = ParametricFamily::gaussian(grid);
  CHECK_THROWS_AS(
      min_score_fit(std::vector<double>{1.0, 2.0}, family, DensityRule::log),
      std::invalid_argument);
  std::vector<double> out_of_domain(50, 0.5);
  out_of_domain[10] = 9.5;
  CHECK_THROWS_AS(
      min_score_fit(out_of_domain, family, DensityRule::log),
      std::invalid_argument);
}

TEST_CASE("identical models tie") {
  const std::vector<ProbVector> models = {ProbVector::from({0.7, 0.3}),
                                          ProbVector::from({0.7, 0.3})};
  const std::vector<CategoricalOutcome> outcomes = {{1}, {2}, {1}, {1}};
  const RankingOutcome ranking =
      rank_models(models, outcomes, CategoricalRule::brier);
  CHECK(ranking.models[0].rank == 1);
  CHECK(ranking.models[1].rank == 1);
}

TEST_CASE("log rule ranks the cautious forecast first under a skewed target") {
  const double p = 0.7;
  const auto [f_plus, f_minus] = make_binary_pair(p, 0.15);
  std::vector<CategoricalOutcome> outcomes;
  for (int i = 0; i < 10000; ++i)
    outcomes.push_back({uniform01(123, i) < p ? 1 : 2});
  const RankingOutcome ranking = rank_models({f_plus, f_minus}, outcomes,
                                             CategoricalRule::log);
  CHECK(ranking.models[0].model == 1);  // f_minus
  CHECK(ranking.models[0].rank == 1);
  CHECK(ranking.models[1].rank == 2);
}

TEST_CASE("Brier ties the pair when outcome frequencies match the target") {
  const auto [f_plus, f_minus] = make_binary_pair(0.7, 0.15);
  std::vector<CategoricalOutcome> outcomes;
  for (int i = 0; i < 10; ++i) outcomes.push_back({i < 7 ? 1 : 2});
  const RankingOutcome ranking = rank_models({f_plus, f_minus}, outcomes,
                                             CategoricalRule::brier);
  CHECK(ranking.models[0].rank == 1);
  CHECK(ranking.models[1].rank == 1);
}

TEST_CASE("empirical ranking matches the analytic expected-score ranking") {
  const Grid grid{-8.0, 8.0, 1025};
  const GridDensity truth = mixture_density(grid, 0.7, 1.0);
  const PerturbationShape shape = PerturbationShape::bump();
  const double eps_top = max_feasible_epsilon(shape, truth);
  const std::vector<GridDensity> models = {
      DensityForecastPair::from(
          truth, make_odd_perturbation(shape, 0.9 * eps_top, truth))
          .plus(),
      DensityForecastPair::from(
          truth, make_odd_perturbation(shape, 0.45 * eps_top, truth))
          .minus(),
      truth};
  const std::vector<double> outcomes = sample_from(cdf_of(truth), 100000, 17);
  for (auto rule : {DensityRule::log, DensityRule::quadratic,
                    DensityRule::spherical, DensityRule::crps}) {
    INFO(to_string(rule));
    // analytic ordering by expected score under the truth
    std::vector<int> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return expected_score(rule, models[a], truth) <
             expected_score(rule, models[b], truth);
    });
    const RankingOutcome ranking = rank_models(models, outcomes, rule);
    for (std::size_t i = 0; i < order.size(); ++i)
      CHECK(ranking.models[i].model == order[i]);
    CHECK(ranking.models.back().model != 2);  // truth never ranks last
  }
}

TEST_CASE("cases nobody can score are skipped; partial failures count "
          "against the failing model") {
  const std::vector<ProbVector> models = {ProbVector::from({0.7, 0.3}),
                                          ProbVector::from({0.5, 0.5})};
  // index 3 is out of range for both binary models
  const std::vector<CategoricalOutcome> outcomes = {{1}, {3}, {2}};
  const RankingOutcome ranking =
      rank_models(models, outcomes, CategoricalRule::log);
  CHECK(ranking.skipped_cases == std::vector<int>{1});
  CHECK(ranking.models[0].report.count() == 2);

  const std::vector<ProbVector> mixed = {ProbVector::from({0.7, 0.3}),
                                         ProbVector::from({0.3, 0.3, 0.4})};
  const RankingOutcome partial =
      rank_models(mixed, outcomes, CategoricalRule::log);
  CHECK(partial.skipped_cases.empty());  // the ternary model handles index 3
  for (const auto& rm : partial.models)
    if (rm.model == 0) CHECK(std::isinf(rm.report.mean));
}

TEST_CASE("family names round-trip") {
  for (auto kind : {FamilyKind::gaussian, FamilyKind::gaussian_mixture2})
    CHECK(family_kind_from(to_string(kind)) == kind);
  CHECK_THROWS_AS(family_kind_from("poisson"), std::invalid_argument);
}
