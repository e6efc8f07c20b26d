#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "scorelab/report.hpp"
#include "scorelab/verify.hpp"
#include "testutil.hpp"

using namespace scorelab;
using namespace scorelab::testing;

namespace {

int count_verdicts(const std::vector<VerificationCase>& cases,
                   Verdict verdict) {
  return static_cast<int>(
      std::count_if(cases.begin(), cases.end(),
                    [&](const VerificationCase& c) {
                      return c.verdict == verdict;
                    }));
}

int count_prop(const std::vector<VerificationCase>& cases,
               const std::string& prop, Verdict verdict) {
  int n = 0;
  for (const auto& c : cases)
    if (c.proposition == prop && c.verdict == verdict) ++n;
  return n;
}

SweepConfig small_density_config() {
  SweepConfig cfg = SweepConfig::density_defaults();
  cfg.mixture_weights = {0.55, 0.75};
  cfg.mixture_separations = {1.0};
  cfg.eps_fractions = {0.1, 0.9};
  cfg.grid = Grid{-8.0, 8.0, 513};
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  SweepConfig cfg = SweepConfig::binary_defaults();
  cfg.grid_steps = 2;
  CHECK_THROWS_AS(verify_binary(cfg), std::invalid_argument);
  cfg = SweepConfig::binary_defaults();
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(verify_binary(cfg), std::invalid_argument);
  cfg = SweepConfig::density_defaults();
  cfg.grid = Grid{-4.0, 8.0, 513};
  CHECK_THROWS_AS(verify_density(cfg), std::invalid_argument);
}

TEST_CASE("default binary sweep holds everywhere") {
  const auto cases = verify_binary(SweepConfig::binary_defaults());
  CHECK(count_verdicts(cases, Verdict::violated) == 0);
  // 81 (p, gamma) points, each contributing one Brier-indifference case
  CHECK(count_prop(cases, "binary.brier_sign_indifference", Verdict::holds) ==
        81);
  CHECK(count_prop(cases, "binary.ls_prefers_fminus", Verdict::holds) == 81);
  CHECK(count_prop(cases, "binary.entropy_ordering", Verdict::holds) == 81);
  CHECK(count_prop(cases, "binary.spherical_prefers_fplus", Verdict::holds) ==
        81);
  CHECK(count_prop(cases, "binary.gamma_star", Verdict::holds) == 81);
  CHECK(count_prop(cases, "binary.ls_brier_disagreement", Verdict::holds) ==
        81);
  CHECK(count_prop(cases, "binary.ls_monotonicity", Verdict::holds) == 9);
  // the entropy threshold hypothesis covers part of the sweep only
  CHECK(count_prop(cases, "binary.entropy_threshold", Verdict::holds) > 0);
  CHECK(count_prop(cases, "binary.entropy_threshold", Verdict::violated) == 0);
  CHECK(count_prop(cases, "binary.entropy_threshold",
                   Verdict::out_of_hypothesis) > 0);
}

TEST_CASE("p = q = 0.5 line reports indifference") {
  SweepConfig cfg = SweepConfig::binary_defaults();
  cfg.p_min = cfg.p_max = 0.5;
  const auto cases = verify_binary(cfg);
  CHECK(count_verdicts(cases, Verdict::violated) == 0);
  CHECK(count_prop(cases, "binary.ls_prefers_fminus", Verdict::indifferent) ==
        9);
  CHECK(count_prop(cases, "binary.spherical_prefers_fplus",
                   Verdict::indifferent) == 9);
  CHECK(count_prop(cases, "binary.brier_sign_indifference", Verdict::holds) ==
        9);
  // gamma* needs q < p strictly
  CHECK(count_prop(cases, "binary.gamma_star", Verdict::out_of_hypothesis) ==
        9);
}

TEST_CASE("a binary case records the log/Brier disagreement region") {
  SweepConfig cfg = SweepConfig::binary_defaults();
  cfg.p_min = cfg.p_max = 0.7;
  cfg.grid_steps = 3;
  const auto cases = verify_binary(cfg);
  bool saw = false;
  for (const auto& c : cases) {
    if (c.proposition != "binary.ls_brier_disagreement") continue;
    if (c.verdict != Verdict::holds) continue;
    saw = true;
    double h = 0.0, brier_diff = 0.0;
    for (const auto& [k, v] : c.computed) {
      if (k == "h_value") h = v;
      if (k == "brier_diff") brier_diff = v;
    }
    CHECK(h > 0.0);          // the log rule prefers f2
    CHECK(brier_diff < 0.0); // while Brier prefers f1
  }
  CHECK(saw);
}

TEST_CASE("binary sweep is deterministic") {
  const SweepConfig cfg = SweepConfig::binary_defaults();
  const std::string a = cases_to_json(verify_binary(cfg)).dump();
  const std::string b = cases_to_json(verify_binary(cfg)).dump();
  CHECK(a == b);
}

TEST_CASE("density sweep on a reduced grid holds everywhere") {
  const SweepConfig cfg = small_density_config();
  const DensityVerifyRun run = verify_density(cfg);
  CHECK_FALSE(run.quadrature_failure);
  CHECK(count_verdicts(run.cases, Verdict::violated) == 0);
  for (const char* prop :
       {"density.els_gap_nonneg", "density.entropy_ordering",
        "density.spherical_prefers_fplus", "density.ls_monotone_scaling",
        "density.qs_sign_indifference", "density.crps_sign_indifference",
        "density.mse_sign_indifference", "density.h_endpoint_signs",
        "density.crps_identity"}) {
    INFO(prop);
    CHECK(count_prop(run.cases, prop, Verdict::holds) > 0);
    CHECK(count_prop(run.cases, prop, Verdict::violated) == 0);
  }
  // refined margins were recorded
  bool saw_refined = false;
  for (const auto& [k, v] : run.cases.front().computed)
    if (k == "margin_refined") saw_refined = true;
  CHECK(saw_refined);
}

TEST_CASE("symmetric targets yield indifference, not violations") {
  SweepConfig cfg = small_density_config();
  cfg.mixture_weights = {0.5};
  cfg.eps_fractions = {0.5};
  cfg.refine_check = false;
  const DensityVerifyRun run = verify_density(cfg);
  CHECK(count_verdicts(run.cases, Verdict::violated) == 0);
  for (const auto& c : run.cases) {
    if (c.proposition == "density.els_gap_nonneg") {
      CHECK(c.verdict == Verdict::indifferent);
      CHECK(std::abs(c.margin) < 1e-10);
    }
    if (c.proposition == "density.gamma_star_scalar")
      CHECK(c.verdict == Verdict::indifferent);
  }
}

TEST_CASE("density sweep is deterministic") {
  SweepConfig cfg = small_density_config();
  cfg.eps_fractions = {0.5};
  cfg.mixture_weights = {0.65};
  const std::string a = cases_to_json(verify_density(cfg).cases).dump();
  const std::string b = cases_to_json(verify_density(cfg).cases).dump();
  CHECK(a == b);
}

TEST_CASE("gamma_star_density brackets and separates") {
  const Grid grid{-8.0, 8.0, 1025};
  const GridDensity p = mixture_density(grid, 0.75, 1.0);
  const PerturbationShape shape = PerturbationShape::bump();
  const double eps = 0.5 * max_feasible_epsilon(shape, p);
  const OddPerturbation gamma2 = make_odd_perturbation(shape, eps, p);

  const double c_star = gamma_star_density(p, gamma2, 1e-12);
  CHECK(c_star > 0.0);
  CHECK(c_star < 1.0);
  CHECK(std::abs(h_functional(p, gamma2.scaled(c_star), gamma2)) < 1e-12);
  CHECK(h_functional(p, gamma2.scaled(c_star + 0.05), gamma2) > 0.0);
  CHECK(h_functional(p, gamma2.scaled(c_star - 0.05), gamma2) < 0.0);

  // symmetric targets leave nothing to separate
  const GridDensity sym = mixture_density(grid, 0.5, 1.0);
  const double eps_sym = 0.5 * max_feasible_epsilon(shape, sym);
  const OddPerturbation gamma_sym =
      make_odd_perturbation(shape, eps_sym, sym);
  CHECK_THROWS_AS(gamma_star_density(sym, gamma_sym, 1e-12), NumericError);

  // a zero perturbation is rejected up front
  CHECK_THROWS_AS(gamma_star_density(p, gamma2.scaled(0.0), 1e-12),
                  std::invalid_argument);
}

TEST_CASE("refinement keeps verdicts stable") {
  SweepConfig cfg = small_density_config();
  cfg.mixture_weights = {0.65};
  cfg.eps_fractions = {0.5};
  cfg.refine_check = true;
  const DensityVerifyRun run = verify_density(cfg);
  CHECK_FALSE(run.quadrature_failure);
}

TEST_CASE("verdict names round-trip") {
  for (auto v : {Verdict::holds, Verdict::violated, Verdict::indifferent,
                 Verdict::out_of_hypothesis})
    CHECK(verdict_from(to_string(v)) == v);
  CHECK_THROWS_AS(verdict_from("maybe"), std::invalid_argument);
}
