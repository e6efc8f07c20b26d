#include "scorelab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "scorelab/categorical.hpp"
#include "scorelab/targets.hpp"

namespace scorelab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::indifferent: return "indifferent";
    case Verdict::out_of_hypothesis: return "out-of-hypothesis";
  }
  return "?";
}

Verdict verdict_from(const std::string& name) {
  if (name == "holds") return Verdict::holds;
  if (name == "violated") return Verdict::violated;
  if (name == "indifferent") return Verdict::indifferent;
  if (name == "out-of-hypothesis") return Verdict::out_of_hypothesis;
  throw std::invalid_argument("unknown verdict: " + name);
}

SweepConfig SweepConfig::binary_defaults() { return SweepConfig{}; }

SweepConfig SweepConfig::density_defaults() {
  SweepConfig cfg;
  cfg.grid_steps = 3;
  cfg.tolerance = 1e-8;
  return cfg;
}

void SweepConfig::validate() const {
  if (grid_steps < 3) throw std::invalid_argument("grid_steps must be >= 3");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("tolerance must be positive");
  if (!(p_min > 0.0 && p_max < 1.0 && p_min <= p_max))
    throw std::invalid_argument("need 0 < p_min <= p_max < 1");
  if (grid.n < 3 || !(grid.hi > grid.lo) || !grid.symmetric())
    throw std::invalid_argument("sweep grid must be symmetric with n >= 3");
  for (double w : mixture_weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("mixture weight outside [0, 1]");
  for (double f : eps_fractions)
    if (!(f >= 0.0 && f <= 1.0))
      throw std::invalid_argument("eps fraction outside [0, 1]");
}

std::vector<double> SweepConfig::gamma_fractions() const {
  std::vector<double> f(grid_steps);
  for (int i = 0; i < grid_steps; ++i)
    f[i] = static_cast<double>(i + 1) / (grid_steps + 1);
  return f;
}

namespace {

// Verdict policy: strict inequalities need a margin of 10x the tolerance,
// smaller gaps are reported indifferent rather than holds or violated.
Verdict inequality_verdict(double margin, double tol) {
  if (margin >= 10.0 * tol) return Verdict::holds;
  if (margin <= -10.0 * tol) return Verdict::violated;
  return Verdict::indifferent;
}

Verdict equality_verdict(double abs_diff, double eq_tol) {
  return abs_diff <= eq_tol ? Verdict::holds : Verdict::violated;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// binary sweep
// ---------------------------------------------------------------------------

constexpr double kBrierEqualityTol = 1e-15;
// root residual target for the indifference-point searches; fixed by design,
// independent of the margin-policy tolerance
constexpr double kRootTol = 1e-12;

std::vector<double> sweep_values(double lo, double hi, int steps) {
  if (lo == hi) return {lo};
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i)
    v[i] = lo + i * (hi - lo) / (steps - 1);
  return v;
}

void emit_binary_point_cases(double p, double gamma, double tol,
                             const std::vector<double>& gamma1_grid,
                             std::vector<VerificationCase>& out) {
  const double q = 1.0 - p;
  const bool in_hypothesis = gamma > 0.0 && gamma < q && q < p;
  const ProbVector target = ProbVector::from({p, q});
  const auto [f_plus, f_minus] = make_binary_pair(p, gamma);

  auto base_inputs = [&] {
    return std::vector<std::pair<std::string, double>>{{"p", p},
                                                       {"gamma", gamma}};
  };

  {  // Brier cannot tell f_plus from f_minus
    VerificationCase c;
    c.proposition = "binary.brier_sign_indifference";
    c.inputs = base_inputs();
    const double bs_plus = expected_score(CategoricalRule::brier, f_plus, target);
    const double bs_minus =
        expected_score(CategoricalRule::brier, f_minus, target);
    const double diff = std::abs(bs_plus - bs_minus);
    c.computed = {{"expected_brier_fplus", bs_plus},
                  {"expected_brier_fminus", bs_minus}};
    c.margin = diff;
    c.verdict = equality_verdict(diff, kBrierEqualityTol);
    out.push_back(std::move(c));
  }

  {  // the log rule prefers f_minus when 0 < gamma < q < p
    VerificationCase c;
    c.proposition = "binary.ls_prefers_fminus";
    c.inputs = base_inputs();
    const double ls_plus = expected_score(CategoricalRule::log, f_plus, target);
    const double ls_minus =
        expected_score(CategoricalRule::log, f_minus, target);
    const double gap = ls_plus - ls_minus;
    double closed = gap;
    if (gamma > 0.0 && gamma < std::min(p, q))
      closed = expected_ls_gap({p, gamma});
    c.computed = {{"expected_log_fplus", ls_plus},
                  {"expected_log_fminus", ls_minus},
                  {"gap_closed_form", closed},
                  {"route_disagreement", std::abs(gap - closed)}};
    c.margin = gap;
    c.verdict = in_hypothesis || p == q ? inequality_verdict(gap, tol)
                                        : Verdict::out_of_hypothesis;
    out.push_back(std::move(c));
  }

  {  // and f_minus carries the higher entropy
    VerificationCase c;
    c.proposition = "binary.entropy_ordering";
    c.inputs = base_inputs();
    const double h_minus = entropy(f_minus);
    const double h_plus = entropy(f_plus);
    c.computed = {{"entropy_fminus", h_minus}, {"entropy_fplus", h_plus}};
    c.margin = h_minus - h_plus;
    c.verdict = in_hypothesis || p == q ? inequality_verdict(c.margin, tol)
                                        : Verdict::out_of_hypothesis;
    out.push_back(std::move(c));
  }

  {  // the spherical rule sides with f_plus
    VerificationCase c;
    c.proposition = "binary.spherical_prefers_fplus";
    c.inputs = base_inputs();
    const double s_plus =
        expected_score(CategoricalRule::spherical, f_plus, target);
    const double s_minus =
        expected_score(CategoricalRule::spherical, f_minus, target);
    c.computed = {{"expected_spherical_fplus", s_plus},
                  {"expected_spherical_fminus", s_minus},
                  {"cos_plus", cos_angle(p, gamma)},
                  {"cos_minus", cos_angle(p, -gamma)}};
    c.margin = s_minus - s_plus;
    c.verdict = in_hypothesis || p == q ? inequality_verdict(c.margin, tol)
                                        : Verdict::out_of_hypothesis;
    out.push_back(std::move(c));
  }

  {  // indifference point gamma* inside (0, gamma2), signs on both sides
    VerificationCase c;
    c.proposition = "binary.gamma_star";
    c.inputs = base_inputs();
    if (!in_hypothesis) {
      c.verdict = Verdict::out_of_hypothesis;
      c.margin = 0.0;
    } else {
      try {
        const double root = gamma_star(p, gamma, kRootTol);
        const double residual = h_indifference(p, root, gamma);
        const double h_left = h_indifference(p, 0.5 * root, gamma);
        const double h_right =
            h_indifference(p, 0.5 * (root + gamma), gamma);
        c.computed = {{"gamma_star", root},
                      {"h_residual", residual},
                      {"h_below_root", h_left},
                      {"h_above_root", h_right}};
        c.margin = std::min(h_right, -h_left);
        c.verdict = std::abs(residual) <= kRootTol
                        ? inequality_verdict(c.margin, tol)
                        : Verdict::violated;
      } catch (const NumericError&) {
        c.verdict = Verdict::violated;
        c.margin = 0.0;
      }
    }
    out.push_back(std::move(c));
  }

  {  // between gamma* and gamma2 the log rule and Brier disagree
    VerificationCase c;
    c.proposition = "binary.ls_brier_disagreement";
    c.inputs = base_inputs();
    if (!in_hypothesis) {
      c.verdict = Verdict::out_of_hypothesis;
      c.margin = 0.0;
    } else {
      const double root = gamma_star(p, gamma, kRootTol);
      const double gamma1 = 0.5 * (root + gamma);
      const ProbVector f1 = make_binary_pair(p, gamma1).first;
      const ProbVector f2 = make_binary_pair(p, gamma).second;
      const double h = h_indifference(p, gamma1, gamma);
      const double brier_diff =
          expected_score(CategoricalRule::brier, f1, target) -
          expected_score(CategoricalRule::brier, f2, target);
      c.computed = {{"gamma1", gamma1},
                    {"h_value", h},
                    {"brier_diff", brier_diff}};
      // log prefers f2 (h > 0) while Brier prefers f1 (brier_diff < 0)
      c.margin = std::min(h, -brier_diff);
      c.verdict = inequality_verdict(c.margin, tol);
    }
    out.push_back(std::move(c));
  }

  {  // entropy comparison against the opposite-side forecast
    VerificationCase c;
    c.proposition = "binary.entropy_threshold";
    c.inputs = base_inputs();
    const double threshold = 0.5 * (p - q);
    double worst = kInf;
    double h_f2 = binary_entropy({p, -gamma});
    for (double g1 : gamma1_grid) {
      if (!(g1 > 0.0 && g1 < q)) continue;
      worst = std::min(worst, h_f2 - binary_entropy({p, g1}));
    }
    c.computed = {{"entropy_f2", h_f2}, {"threshold", threshold}};
    c.margin = worst;
    const bool applies = p > q && gamma <= threshold;
    c.verdict =
        applies ? inequality_verdict(worst, tol) : Verdict::out_of_hypothesis;
    out.push_back(std::move(c));
  }
}

// ---------------------------------------------------------------------------
// density sweep
// ---------------------------------------------------------------------------

bool left_weighted(const GridDensity& p) {
  const int n = p.grid().n;
  for (int i = 0; i < n; ++i) {
    if (!(p.grid().x(i) < 0.0)) break;
    if (p[i] < p[n - 1 - i]) return false;
  }
  return true;
}

std::vector<PerturbationShape> sweep_shapes() {
  return {PerturbationShape::bump(), PerturbationShape::sine(),
          PerturbationShape::tanh_step()};
}

void emit_density_point_cases(const GridDensity& target, double weight,
                              double separation,
                              const PerturbationShape& shape,
                              double eps_fraction, double tol,
                              std::vector<VerificationCase>& out) {
  const double eps_top = max_feasible_epsilon(shape, target);
  const double eps = eps_fraction * eps_top;
  const OddPerturbation gamma = make_odd_perturbation(shape, eps, target);
  const DensityForecastPair pair =
      DensityForecastPair::from(target, gamma);
  const GridDensity f_plus = pair.plus();
  const GridDensity f_minus = pair.minus();
  const bool in_hypothesis = left_weighted(target);

  auto labels = [&] {
    return std::vector<std::pair<std::string, std::string>>{
        {"shape", to_string(shape.kind)}};
  };
  auto inputs = [&] {
    return std::vector<std::pair<std::string, double>>{
        {"weight", weight},
        {"separation", separation},
        {"shape_center", shape.center},
        {"shape_width", shape.width},
        {"eps_fraction", eps_fraction},
        {"epsilon", eps},
        {"eps_max", eps_top}};
  };
  auto hypothesis_verdict = [&](double margin) {
    return in_hypothesis ? inequality_verdict(margin, tol)
                         : Verdict::out_of_hypothesis;
  };

  {  // E[LS]_pm >= 0 for a left-weighted target
    VerificationCase c;
    c.proposition = "density.els_gap_nonneg";
    c.labels = labels();
    c.inputs = inputs();
    const double gap = expected_ls_gap(pair);
    const double via_scores =
        expected_log(f_plus, target) - expected_log(f_minus, target);
    c.computed = {{"els_gap", gap},
                  {"route_disagreement", std::abs(gap - via_scores)}};
    c.margin = gap;
    c.verdict = hypothesis_verdict(gap);
    out.push_back(std::move(c));
  }

  {  // f_minus is the higher-entropy forecast
    VerificationCase c;
    c.proposition = "density.entropy_ordering";
    c.labels = labels();
    c.inputs = inputs();
    const double h_minus = entropy(f_minus);
    const double h_plus = entropy(f_plus);
    c.computed = {{"entropy_fminus", h_minus}, {"entropy_fplus", h_plus}};
    c.margin = h_minus - h_plus;
    c.verdict = hypothesis_verdict(c.margin);
    out.push_back(std::move(c));
  }

  {  // the spherical rule prefers f_plus
    VerificationCase c;
    c.proposition = "density.spherical_prefers_fplus";
    c.labels = labels();
    c.inputs = inputs();
    const double s_plus = expected_spherical(f_plus, target);
    const double s_minus = expected_spherical(f_minus, target);
    c.computed = {{"expected_spherical_fplus", s_plus},
                  {"expected_spherical_fminus", s_minus}};
    c.margin = s_minus - s_plus;
    c.verdict = hypothesis_verdict(c.margin);
    out.push_back(std::move(c));
  }

  {  // expected log score increases along c * gamma
    VerificationCase c;
    c.proposition = "density.ls_monotone_scaling";
    c.labels = labels();
    c.inputs = inputs();
    const std::vector<double> scales{0.25, 0.5, 0.75, 1.0};
    double prev = 0.0;
    double min_step = kInf;
    for (std::size_t k = 0; k < scales.size(); ++k) {
      const DensityForecastPair scaled_pair =
          DensityForecastPair::from(target, gamma.scaled(scales[k]));
      const double value = expected_log(scaled_pair.plus(), target);
      if (k > 0) min_step = std::min(min_step, value - prev);
      prev = value;
    }
    c.computed = {{"min_step", min_step}};
    c.margin = min_step;
    c.verdict = hypothesis_verdict(min_step);
    out.push_back(std::move(c));
  }

  const GridCDF cdf_plus = cdf_of(f_plus);
  const GridCDF cdf_minus = cdf_of(f_minus);

  {  // quadratic score is blind to the sign of gamma
    VerificationCase c;
    c.proposition = "density.qs_sign_indifference";
    c.labels = labels();
    c.inputs = inputs();
    const double qs_plus = expected_quadratic(f_plus, target);
    const double qs_minus = expected_quadratic(f_minus, target);
    c.computed = {{"expected_quadratic_fplus", qs_plus},
                  {"expected_quadratic_fminus", qs_minus}};
    c.margin = std::abs(qs_plus - qs_minus);
    c.verdict = equality_verdict(c.margin, 1e-12);
    out.push_back(std::move(c));
  }

  {  // so is the CRPS
    VerificationCase c;
    c.proposition = "density.crps_sign_indifference";
    c.labels = labels();
    c.inputs = inputs();
    const double crps_plus = expected_crps(cdf_plus, target);
    const double crps_minus = expected_crps(cdf_minus, target);
    c.computed = {{"expected_crps_fplus", crps_plus},
                  {"expected_crps_fminus", crps_minus}};
    c.margin = std::abs(crps_plus - crps_minus);
    c.verdict = equality_verdict(c.margin, 1e-12);
    out.push_back(std::move(c));
  }

  {  // and the mean squared error criterion
    VerificationCase c;
    c.proposition = "density.mse_sign_indifference";
    c.labels = labels();
    c.inputs = inputs();
    const double mse_plus = mse_criterion(pair, +1);
    const double mse_minus = mse_criterion(pair, -1);
    c.computed = {{"mse_plus", mse_plus}, {"mse_minus", mse_minus}};
    c.margin = std::abs(mse_plus - mse_minus);
    c.verdict = equality_verdict(c.margin, 1e-12);
    out.push_back(std::move(c));
  }

  {  // H(0, g2) < 0 < H(g2, g2)
    VerificationCase c;
    c.proposition = "density.h_endpoint_signs";
    c.labels = labels();
    c.inputs = inputs();
    const OddPerturbation zero = gamma.scaled(0.0);
    const double h0 = h_functional(target, zero, gamma);
    const double h1 = h_functional(target, gamma, gamma);
    c.computed = {{"h_at_zero", h0}, {"h_at_gamma2", h1}};
    c.margin = std::min(-h0, h1);
    c.verdict = hypothesis_verdict(c.margin);
    out.push_back(std::move(c));
  }

  {  // split-form expected CRPS equals the direct nested quadrature
    VerificationCase c;
    c.proposition = "density.crps_identity";
    c.labels = labels();
    c.inputs = inputs();
    const double split_form = expected_crps(cdf_plus, target);
    const CrpsEvaluator eval(cdf_plus);
    std::vector<double> integrand(target.grid().n);
    for (int i = 0; i < target.grid().n; ++i)
      integrand[i] = target[i] * eval.at_node(i);
    const double direct = trapezoid(target.grid(), integrand);
    c.computed = {{"split_form", split_form}, {"direct", direct}};
    c.margin = std::abs(split_form - direct);
    c.verdict = equality_verdict(c.margin, 1e-6);
    out.push_back(std::move(c));
  }

  {  // scalar indifference point along c * gamma
    VerificationCase c;
    c.proposition = "density.gamma_star_scalar";
    c.labels = labels();
    c.inputs = inputs();
    const OddPerturbation zero = gamma.scaled(0.0);
    const double h0 = h_functional(target, zero, gamma);
    const double h1 = h_functional(target, gamma, gamma);
    if (std::abs(h1) < 10.0 * tol) {
      // H(g2, g2) is the expected log-score gap; when it vanishes the two
      // forecasts tie and there is no root to separate
      c.computed = {{"h_at_zero", h0}, {"h_at_gamma2", h1}};
      c.verdict =
          in_hypothesis ? Verdict::indifferent : Verdict::out_of_hypothesis;
      c.margin = 0.0;
    } else if (!in_hypothesis) {
      c.verdict = Verdict::out_of_hypothesis;
      c.margin = 0.0;
    } else {
      try {
        const double c_star = gamma_star_density(target, gamma, kRootTol);
        const double residual =
            h_functional(target, gamma.scaled(c_star), gamma);
        const double lo = std::max(0.0, c_star - 0.05);
        const double hi = std::min(1.0, c_star + 0.05);
        const double h_below = h_functional(target, gamma.scaled(lo), gamma);
        const double h_above = h_functional(target, gamma.scaled(hi), gamma);
        c.computed = {{"c_star", c_star},
                      {"h_residual", residual},
                      {"h_below_root", h_below},
                      {"h_above_root", h_above}};
        c.margin = std::min(h_above, -h_below);
        c.verdict = std::abs(residual) <= kRootTol
                        ? inequality_verdict(c.margin, tol)
                        : Verdict::violated;
      } catch (const NumericError&) {
        c.verdict = Verdict::violated;
        c.margin = 0.0;
      }
    }
    out.push_back(std::move(c));
  }
}

std::vector<VerificationCase> density_cases(const SweepConfig& cfg,
                                            const Grid& grid) {
  std::vector<VerificationCase> cases;
  const auto shapes = sweep_shapes();
  for (double weight : cfg.mixture_weights) {
    for (double separation : cfg.mixture_separations) {
      const GridDensity target = mixture_density(grid, weight, separation);
      for (const auto& shape : shapes)
        for (double fraction : cfg.eps_fractions)
          emit_density_point_cases(target, weight, separation, shape,
                                   fraction, cfg.tolerance, cases);
    }
  }
  return cases;
}

}  // namespace

std::vector<VerificationCase> verify_binary(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<VerificationCase> cases;
  const std::vector<double> ps = sweep_values(cfg.p_min, cfg.p_max,
                                              cfg.grid_steps);
  const std::vector<double> fractions = cfg.gamma_fractions();
  for (double p : ps) {
    const double bound = std::min(p, 1.0 - p);
    std::vector<double> gammas(fractions.size());
    for (std::size_t i = 0; i < fractions.size(); ++i)
      gammas[i] = fractions[i] * bound;

    {  // expected log score is increasing in gamma on (0, q)
      VerificationCase c;
      c.proposition = "binary.ls_monotonicity";
      c.inputs = {{"p", p},
                  {"gamma_count", static_cast<double>(gammas.size())}};
      const ProbVector target = ProbVector::from({p, 1.0 - p});
      double prev = expected_score(CategoricalRule::log, target, target);
      double min_step = kInf;
      for (double g : gammas) {
        const auto [f_plus, f_minus] = make_binary_pair(p, g);
        const double value =
            expected_score(CategoricalRule::log, f_plus, target);
        min_step = std::min(min_step, value - prev);
        prev = value;
      }
      c.computed = {{"min_step", min_step}};
      c.margin = min_step;
      c.verdict = inequality_verdict(min_step, cfg.tolerance);
      cases.push_back(std::move(c));
    }

    for (double gamma : gammas)
      emit_binary_point_cases(p, gamma, cfg.tolerance, gammas, cases);
  }
  return cases;
}

DensityVerifyRun verify_density(const SweepConfig& cfg) {
  cfg.validate();
  DensityVerifyRun run;
  run.cases = density_cases(cfg, cfg.grid);
  if (cfg.refine_check) {
    Grid refined{cfg.grid.lo, cfg.grid.hi, 2 * cfg.grid.n - 1};
    const std::vector<VerificationCase> again = density_cases(cfg, refined);
    for (std::size_t i = 0; i < run.cases.size(); ++i) {
      run.cases[i].computed.emplace_back("margin_refined", again[i].margin);
      if (again[i].verdict != run.cases[i].verdict)
        run.quadrature_failure = true;
    }
  }
  return run;
}

double gamma_star_density(const GridDensity& p, const OddPerturbation& gamma2,
                          double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  require_valid_for(gamma2, p);
  bool nonzero = false;
  for (double v : gamma2.values())
    if (v != 0.0) nonzero = true;
  if (!nonzero)
    throw std::invalid_argument("gamma2 is identically zero");
  const OddPerturbation zero = gamma2.scaled(0.0);
  const double at_zero = h_functional(p, zero, gamma2);
  const double at_one = h_functional(p, gamma2, gamma2);
  // endpoints must clear the tolerance for the sign change to be resolvable
  if (!(at_zero < -tol && at_one > tol))
    throw NumericError("bracket failure: H(0, g2) = " +
                       format_double(at_zero) + ", H(g2, g2) = " +
                       format_double(at_one));
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = h_functional(p, gamma2.scaled(mid), gamma2);
    if (std::abs(value) < tol) return mid;
    (value < 0.0 ? lo : hi) = mid;
  }
  throw NumericError("gamma_star_density did not converge in 200 iterations");
}

}  // namespace scorelab
