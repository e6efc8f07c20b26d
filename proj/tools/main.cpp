// scorelab: batch scoring, ranking, expected-score computation, proposition
// verification, indifference-point search, entropy, and minimum-score
// estimation for probabilistic forecasts.
//
// Exit codes: 0 success, 1 input validation, 2 numeric failure. All scores
// are losses (lower is better). Decimal output carries 9 significant digits.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scorelab/estimate.hpp"
#include "scorelab/io.hpp"
#include "scorelab/report.hpp"
#include "scorelab/targets.hpp"

namespace {

using namespace scorelab;

std::string fmt9(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

ProbVector parse_prob_vector(const std::string& text) {
  std::vector<double> probs;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      probs.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw std::invalid_argument("not a probability: '" + token + "'");
    }
  }
  return ProbVector::from(std::move(probs));
}

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::string report_path;
  std::string format = "table";
};

void emit(const GlobalOptions& global, const RunManifest& manifest,
          const Json& results, const std::string& table) {
  if (global.format == "records")
    std::cout << make_report(manifest, results).dump(2) << "\n";
  else
    std::cout << table;
  if (!global.report_path.empty())
    write_report_file(global.report_path, make_report(manifest, results));
}

// ---------------------------------------------------------------------------
// score
// ---------------------------------------------------------------------------

struct ScoreArgs {
  std::string rule;
  std::string forecasts;
  std::string density;
  std::string outcomes;
};

int cmd_score(const GlobalOptions& global, const ScoreArgs& args) {
  RunManifest manifest;
  manifest.command = "score";
  manifest.seed = global.seed;
  manifest.options = {{"rule", args.rule}, {"format", global.format}};

  ScoreReport report;
  if (!args.forecasts.empty()) {
    const CategoricalRule rule = categorical_rule_from(args.rule);
    const auto forecasts = read_forecasts_csv(args.forecasts);
    const auto outcomes = read_outcome_indices(args.outcomes);
    if (forecasts.size() != outcomes.size())
      throw std::invalid_argument(
          "forecast rows (" + std::to_string(forecasts.size()) +
          ") and outcome lines (" + std::to_string(outcomes.size()) +
          ") differ");
    std::vector<double> scores(forecasts.size());
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
      try {
        scores[i] = score(rule, forecasts[i], outcomes[i]);
      } catch (const std::domain_error& e) {
        throw std::invalid_argument("case " + std::to_string(i + 1) + ": " +
                                    e.what());
      }
    }
    report = ScoreReport::from(to_string(rule), std::move(scores));
    manifest.input_digests = {{"forecasts", file_digest(args.forecasts)},
                              {"outcomes", file_digest(args.outcomes)}};
  } else if (!args.density.empty()) {
    const DensityRule rule = density_rule_from(args.rule);
    const GridDensity forecast = read_density_doc(args.density);
    const auto outcomes = read_reals(args.outcomes);
    std::vector<double> scores(outcomes.size());
    if (rule == DensityRule::crps) {
      const CrpsEvaluator eval(cdf_of(forecast));
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        try {
          scores[i] = eval.at(outcomes[i]);
        } catch (const std::domain_error& e) {
          throw std::invalid_argument("case " + std::to_string(i + 1) + ": " +
                                      e.what());
        }
      }
    } else {
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        try {
          scores[i] = score(rule, forecast, outcomes[i]);
        } catch (const std::domain_error& e) {
          throw std::invalid_argument("case " + std::to_string(i + 1) + ": " +
                                      e.what());
        }
      }
    }
    report = ScoreReport::from(to_string(rule), std::move(scores));
    manifest.input_digests = {{"density", file_digest(args.density)},
                              {"outcomes", file_digest(args.outcomes)}};
  } else {
    throw std::invalid_argument("need --forecasts or --density");
  }

  if (std::isinf(report.mean))
    std::cerr << "warning: a zero-probability outcome materialized; the mean "
                 "score is infinite\n";

  Json results = to_json(report);
  std::ostringstream table;
  table << "rule: " << report.rule << "\n";
  table << "cases: " << report.count() << "\n";
  table << "mean: " << fmt9(report.mean) << "\n";
  for (int i = 0; i < report.count(); ++i)
    table << "  " << i + 1 << "  " << fmt9(report.scores[i]) << "\n";
  emit(global, manifest, results, table.str());
  return 0;
}

// ---------------------------------------------------------------------------
// expected
// ---------------------------------------------------------------------------

struct ExpectedArgs {
  std::string rule;
  std::string f_inline;
  std::string p_inline;
  std::string forecast_density;
  std::string target_density;
};

int cmd_expected(const GlobalOptions& global, const ExpectedArgs& args) {
  RunManifest manifest;
  manifest.command = "expected";
  manifest.seed = global.seed;
  manifest.options = {{"rule", args.rule}, {"format", global.format}};

  double value = 0.0;
  if (!args.f_inline.empty()) {
    if (args.p_inline.empty())
      throw std::invalid_argument("--f requires --p");
    const CategoricalRule rule = categorical_rule_from(args.rule);
    value = expected_score(rule, parse_prob_vector(args.f_inline),
                           parse_prob_vector(args.p_inline));
    manifest.options.emplace_back("f", args.f_inline);
    manifest.options.emplace_back("p", args.p_inline);
  } else if (!args.forecast_density.empty()) {
    if (args.target_density.empty())
      throw std::invalid_argument("--forecast-density requires "
                                  "--target-density");
    const DensityRule rule = density_rule_from(args.rule);
    value = expected_score(rule, read_density_doc(args.forecast_density),
                           read_density_doc(args.target_density));
    manifest.input_digests = {
        {"forecast_density", file_digest(args.forecast_density)},
        {"target_density", file_digest(args.target_density)}};
  } else {
    throw std::invalid_argument("need --f/--p or --forecast-density/"
                                "--target-density");
  }

  Json results;
  results["rule"] = args.rule;
  results["value"] = encode_score(value);
  emit(global, manifest, results,
       "expected " + args.rule + " score: " + fmt9(value) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// entropy
// ---------------------------------------------------------------------------

struct EntropyArgs {
  std::string dist_inline;
  std::string density;
};

int cmd_entropy(const GlobalOptions& global, const EntropyArgs& args) {
  RunManifest manifest;
  manifest.command = "entropy";
  manifest.seed = global.seed;
  manifest.options = {{"format", global.format}};

  double value = 0.0;
  if (!args.dist_inline.empty()) {
    value = entropy(parse_prob_vector(args.dist_inline));
    manifest.options.emplace_back("dist", args.dist_inline);
  } else if (!args.density.empty()) {
    value = entropy(read_density_doc(args.density));
    manifest.input_digests = {{"density", file_digest(args.density)}};
  } else {
    throw std::invalid_argument("need --dist or --density");
  }

  Json results;
  results["value"] = value;
  emit(global, manifest, results, fmt9(value) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// gamma-star
// ---------------------------------------------------------------------------

struct GammaStarArgs {
  double p = 0.7;
  double gamma2 = 0.2;
  double tol = 1e-12;
};

int cmd_gamma_star(const GlobalOptions& global, const GammaStarArgs& args) {
  RunManifest manifest;
  manifest.command = "gamma-star";
  manifest.seed = global.seed;
  manifest.options = {{"p", fmt9(args.p)},
                      {"gamma2", fmt9(args.gamma2)},
                      {"tol", fmt9(args.tol)},
                      {"format", global.format}};

  const double root = gamma_star(args.p, args.gamma2, args.tol);
  const double residual = h_indifference(args.p, root, args.gamma2);

  Json results;
  results["p"] = args.p;
  results["gamma2"] = args.gamma2;
  results["gamma_star"] = root;
  results["h_residual"] = residual;
  std::ostringstream table;
  table << "gamma_star: " << fmt9(root) << "\n";
  table << "h_residual: " << fmt9(residual) << "\n";
  emit(global, manifest, results, table.str());
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  int grid_steps = 0;     // 0: per-suite default
  double tolerance = 0.0; // 0: per-suite default
  bool no_refine = false;
};

int cmd_verify(const GlobalOptions& global, const VerifyArgs& args) {
  SweepConfig cfg = args.suite == "binary" ? SweepConfig::binary_defaults()
                                           : SweepConfig::density_defaults();
  cfg.seed = global.seed;
  if (args.grid_steps > 0) {
    cfg.grid_steps = args.grid_steps;
    if (args.suite == "density") {
      cfg.eps_fractions.resize(cfg.grid_steps);
      for (int i = 0; i < cfg.grid_steps; ++i)
        cfg.eps_fractions[i] =
            0.1 + 0.8 * static_cast<double>(i) / (cfg.grid_steps - 1);
    }
  }
  if (args.tolerance > 0.0) cfg.tolerance = args.tolerance;
  cfg.refine_check = !args.no_refine;

  RunManifest manifest;
  manifest.command = "verify";
  manifest.seed = global.seed;
  manifest.options = {{"suite", args.suite},
                      {"grid_steps", std::to_string(cfg.grid_steps)},
                      {"tolerance", fmt9(cfg.tolerance)},
                      {"refine", cfg.refine_check ? "true" : "false"},
                      {"format", global.format}};

  std::vector<VerificationCase> cases;
  bool quadrature_failure = false;
  if (args.suite == "binary") {
    cases = verify_binary(cfg);
  } else if (args.suite == "density") {
    DensityVerifyRun run = verify_density(cfg);
    cases = std::move(run.cases);
    quadrature_failure = run.quadrature_failure;
  } else {
    throw std::invalid_argument("suite must be binary or density");
  }

  int violated = 0, holds = 0, indifferent = 0, out_of_hyp = 0;
  for (const auto& c : cases) {
    switch (c.verdict) {
      case Verdict::holds: ++holds; break;
      case Verdict::violated: ++violated; break;
      case Verdict::indifferent: ++indifferent; break;
      case Verdict::out_of_hypothesis: ++out_of_hyp; break;
    }
  }

  Json results;
  results["suite"] = args.suite;
  if (args.suite == "density")
    results["note"] =
        "skew convention: in-hypothesis targets are left-weighted, "
        "p(x) >= p(-x) for x < 0";
  Json summary;
  summary["cases"] = cases.size();
  summary["holds"] = holds;
  summary["violated"] = violated;
  summary["indifferent"] = indifferent;
  summary["out_of_hypothesis"] = out_of_hyp;
  summary["quadrature_failure"] = quadrature_failure;
  results["summary"] = std::move(summary);
  results["cases"] = cases_to_json(cases);

  std::ostringstream table;
  table << "suite: " << args.suite << "\n";
  table << "cases: " << cases.size() << "  holds: " << holds
        << "  violated: " << violated << "  indifferent: " << indifferent
        << "  out-of-hypothesis: " << out_of_hyp << "\n";
  if (quadrature_failure)
    table << "QUADRATURE FAILURE: verdicts flipped under grid refinement\n";
  // per-proposition rollup
  std::vector<std::string> seen;
  for (const auto& c : cases) {
    bool found = false;
    for (const auto& s : seen) found = found || s == c.proposition;
    if (found) continue;
    seen.push_back(c.proposition);
    int h = 0, v = 0, ind = 0, oh = 0;
    double min_margin = kInf;
    for (const auto& k : cases) {
      if (k.proposition != c.proposition) continue;
      switch (k.verdict) {
        case Verdict::holds:
          ++h;
          min_margin = std::min(min_margin, k.margin);
          break;
        case Verdict::violated: ++v; break;
        case Verdict::indifferent: ++ind; break;
        case Verdict::out_of_hypothesis: ++oh; break;
      }
    }
    table << "  " << c.proposition << ": holds " << h << ", violated " << v
          << ", indifferent " << ind << ", out-of-hypothesis " << oh;
    if (h > 0) table << ", min holds margin " << fmt9(min_margin);
    table << "\n";
  }
  emit(global, manifest, results, table.str());

  if (quadrature_failure) return 2;
  return violated == 0 ? 0 : 2;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::string family = "gaussian";
  std::string rule = "log";
  std::string samples;
  int restarts = 3;
  int max_iterations = 600;
};

int cmd_estimate(const GlobalOptions& global, const EstimateArgs& args) {
  RunManifest manifest;
  manifest.command = "estimate";
  manifest.seed = global.seed;
  manifest.options = {{"family", args.family},
                      {"rule", args.rule},
                      {"restarts", std::to_string(args.restarts)},
                      {"max_iterations", std::to_string(args.max_iterations)},
                      {"format", global.format}};
  manifest.input_digests = {{"samples", file_digest(args.samples)}};

  const Grid grid{-8.0, 8.0, 2049};
  const ParametricFamily family =
      family_kind_from(args.family) == FamilyKind::gaussian
          ? ParametricFamily::gaussian(grid)
          : ParametricFamily::gaussian_mixture2(grid);
  const std::vector<double> samples = read_reals(args.samples);

  FitConfig fit_cfg;
  fit_cfg.seed = global.seed;
  fit_cfg.restarts = args.restarts;
  fit_cfg.max_iterations = args.max_iterations;
  const EstimationResult result =
      min_score_fit(samples, family, density_rule_from(args.rule), fit_cfg);

  Json results;
  results["family"] = args.family;
  results["rule"] = args.rule;
  Json params;
  const auto names = family.param_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    params[names[i]] = result.params[i];
  results["params"] = std::move(params);
  results["final_score"] = encode_score(result.final_score);
  results["iterations"] = result.iterations;
  results["converged"] = result.converged;

  std::ostringstream table;
  table << "family: " << args.family << "  rule: " << args.rule << "\n";
  for (std::size_t i = 0; i < names.size(); ++i)
    table << "  " << names[i] << ": " << fmt9(result.params[i]) << "\n";
  table << "final mean score: " << fmt9(result.final_score) << "\n";
  table << "iterations: " << result.iterations
        << "  converged: " << (result.converged ? "yes" : "no") << "\n";
  emit(global, manifest, results, table.str());
  return 0;
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

struct RankArgs {
  std::string rule;
  std::string forecasts;
  std::vector<std::string> densities;
  std::string outcomes;
};

int cmd_rank(const GlobalOptions& global, const RankArgs& args) {
  RunManifest manifest;
  manifest.command = "rank";
  manifest.seed = global.seed;
  manifest.options = {{"rule", args.rule}, {"format", global.format}};

  RankingOutcome ranking;
  std::vector<std::string> model_names;
  if (!args.forecasts.empty()) {
    // each CSV row is one competing model, scored on every outcome
    const CategoricalRule rule = categorical_rule_from(args.rule);
    const std::vector<ProbVector> models = read_forecasts_csv(args.forecasts);
    const auto outcome_list = read_outcome_indices(args.outcomes);
    for (std::size_t m = 0; m < models.size(); ++m)
      model_names.push_back(args.forecasts + " row " + std::to_string(m + 1));
    manifest.input_digests.emplace_back("forecasts",
                                        file_digest(args.forecasts));
    ranking = rank_models(models, outcome_list, rule);
  } else if (!args.densities.empty()) {
    const DensityRule rule = density_rule_from(args.rule);
    std::vector<GridDensity> models;
    for (const auto& path : args.densities) {
      models.push_back(read_density_doc(path));
      model_names.push_back(path);
      manifest.input_digests.emplace_back(path, file_digest(path));
    }
    const std::vector<double> outcome_list = read_reals(args.outcomes);
    ranking = rank_models(models, outcome_list, rule);
  } else {
    throw std::invalid_argument("need --forecasts or --densities");
  }
  manifest.input_digests.emplace_back("outcomes",
                                      file_digest(args.outcomes));

  Json results;
  results["rule"] = args.rule;
  Json model_array = Json::array();
  for (const auto& rm : ranking.models) {
    Json entry;
    entry["model"] = model_names[rm.model];
    entry["rank"] = rm.rank;
    entry["mean"] = encode_score(rm.report.mean);
    entry["report"] = to_json(rm.report);
    model_array.push_back(std::move(entry));
  }
  results["models"] = std::move(model_array);
  Json skipped = Json::array();
  for (int c : ranking.skipped_cases) skipped.push_back(c);
  results["skipped_cases"] = std::move(skipped);

  std::ostringstream table;
  table << "rule: " << args.rule << "\n";
  for (const auto& rm : ranking.models)
    table << "  rank " << rm.rank << "  mean " << fmt9(rm.report.mean) << "  "
          << model_names[rm.model] << "\n";
  if (!ranking.skipped_cases.empty())
    table << "skipped cases (no model could score them): "
          << ranking.skipped_cases.size() << "\n";
  emit(global, manifest, results, table.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proper-scoring-rule engine for probabilistic forecasts"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for all randomized steps")
      ->capture_default_str();
  app.add_option("--report", global.report_path,
                 "write the machine-readable JSON report here");
  app.add_option("--format", global.format, "stdout format")
      ->check(CLI::IsMember({"table", "records"}))
      ->capture_default_str();

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "score forecasts against "
                                                "materialized outcomes");
  score_cmd->add_option("--rule", score_args.rule, "scoring rule")->required();
  score_cmd->add_option("--forecasts", score_args.forecasts,
                        "categorical forecasts CSV (header f1,...,fm)");
  score_cmd->add_option("--density", score_args.density,
                        "density forecast document");
  score_cmd->add_option("--outcomes", score_args.outcomes, "outcomes file")
      ->required();

  ExpectedArgs expected_args;
  auto* expected_cmd =
      app.add_subcommand("expected", "expected score of a forecast under a "
                                     "known target");
  expected_cmd->add_option("--rule", expected_args.rule, "scoring rule")
      ->required();
  expected_cmd->add_option("--f", expected_args.f_inline,
                           "forecast probabilities, comma separated");
  expected_cmd->add_option("--p", expected_args.p_inline,
                           "target probabilities, comma separated");
  expected_cmd->add_option("--forecast-density",
                           expected_args.forecast_density,
                           "forecast density document");
  expected_cmd->add_option("--target-density", expected_args.target_density,
                           "target density document");

  EntropyArgs entropy_args;
  auto* entropy_cmd = app.add_subcommand("entropy", "Shannon entropy of a "
                                                    "distribution");
  entropy_cmd->add_option("--dist", entropy_args.dist_inline,
                          "probabilities, comma separated");
  entropy_cmd->add_option("--density", entropy_args.density,
                          "density document");

  GammaStarArgs gamma_args;
  auto* gamma_cmd =
      app.add_subcommand("gamma-star", "indifference point of the log rule "
                                       "between opposite departures");
  gamma_cmd->add_option("--p", gamma_args.p, "target probability of category "
                                             "1")->required();
  gamma_cmd->add_option("--gamma2", gamma_args.gamma2,
                        "departure of the underconfident forecast")
      ->required();
  gamma_cmd->add_option("--tol", gamma_args.tol, "residual tolerance on H")
      ->capture_default_str();

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "run a proposition "
                                                  "verification suite");
  verify_cmd->add_option("--suite", verify_args.suite, "binary or density")
      ->required()
      ->check(CLI::IsMember({"binary", "density"}));
  verify_cmd->add_option("--grid-steps", verify_args.grid_steps,
                         "sweep steps per parameter");
  verify_cmd->add_option("--tolerance", verify_args.tolerance,
                         "margin tolerance");
  verify_cmd->add_flag("--no-refine", verify_args.no_refine,
                       "skip the grid-refinement stability check");

  EstimateArgs estimate_args;
  auto* estimate_cmd =
      app.add_subcommand("estimate", "fit a parametric family by minimum "
                                     "score");
  estimate_cmd->add_option("--family", estimate_args.family,
                           "gaussian or gaussian-mixture-2")
      ->capture_default_str();
  estimate_cmd->add_option("--rule", estimate_args.rule,
                           "log, quadratic, spherical, or crps")
      ->capture_default_str();
  estimate_cmd->add_option("--samples", estimate_args.samples,
                           "samples file, one real per line")
      ->required();
  estimate_cmd->add_option("--restarts", estimate_args.restarts,
                           "jittered simplex restarts")
      ->capture_default_str();
  estimate_cmd->add_option("--max-iterations", estimate_args.max_iterations,
                           "simplex iterations per restart")
      ->capture_default_str();

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank", "rank competing forecast "
                                              "models by mean score");
  rank_cmd->add_option("--rule", rank_args.rule, "scoring rule")->required();
  rank_cmd->add_option("--forecasts", rank_args.forecasts,
                       "categorical forecast CSV, one model per row");
  rank_cmd->add_option("--densities", rank_args.densities,
                       "density documents, one model per file");
  rank_cmd->add_option("--outcomes", rank_args.outcomes, "outcomes file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (score_cmd->parsed()) return cmd_score(global, score_args);
    if (expected_cmd->parsed()) return cmd_expected(global, expected_args);
    if (entropy_cmd->parsed()) return cmd_entropy(global, entropy_args);
    if (gamma_cmd->parsed()) return cmd_gamma_star(global, gamma_args);
    if (verify_cmd->parsed()) return cmd_verify(global, verify_args);
    if (estimate_cmd->parsed()) return cmd_estimate(global, estimate_args);
    if (rank_cmd->parsed()) return cmd_rank(global, rank_args);
    std::cerr << "error: no command\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}
