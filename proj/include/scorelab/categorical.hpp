// Categorical scoring rules (Brier, logarithmic, spherical, RPS), their
// expected values under a known target, and the closed-form diagnostics of
// the binary forecast-pair analysis.
#pragma once

#include <string>

#include "scorelab/core.hpp"

namespace scorelab {

/// 1-based category index of the materialized outcome.
struct CategoricalOutcome {
  int index = 1;
};

enum class CategoricalRule { brier, log, spherical, rps };

std::string to_string(CategoricalRule rule);
CategoricalRule categorical_rule_from(const std::string& name);

/// (1/m) sum_i (f_i - delta_ij)^2.
double brier_score(const ProbVector& f, CategoricalOutcome j);
/// -log f_j; +inf when the materialized category had probability zero.
double log_score(const ProbVector& f, CategoricalOutcome j);
/// -f_j / ||f||_2; in [-1, 0].
double spherical_score(const ProbVector& f, CategoricalOutcome j);
/// Ranked probability score over cumulative sums, normalized by m - 1.
/// For m = 2 this coincides with the Brier score under its 1/m convention.
double rps_score(const ProbVector& f, CategoricalOutcome j);

double score(CategoricalRule rule, const ProbVector& f, CategoricalOutcome j);

/// Exact finite-sum expectation sum_j p_j S(f, j).
double expected_score(CategoricalRule rule, const ProbVector& f,
                      const ProbVector& p);

/// Arguments of the binary gap diagnostics; q = 1 - p. Each diagnostic
/// validates its own domain requirements on gamma.
struct GapDiagnostics {
  double p;
  double gamma;

  double q() const { return 1.0 - p; }
};

/// Expected log-score gap E[LS(f+)] - E[LS(f-)] for f_pm = (p ± g, q ∓ g):
/// p log((p-g)/(p+g)) + q log((q+g)/(q-g)). Requires 0 < gamma < min(p, q).
double expected_ls_gap(const GapDiagnostics& d);
/// d/dgamma of the gap: 2 g^2 (p^2 - q^2) / ((p^2 - g^2)(q^2 - g^2)).
double expected_ls_gap_derivative(const GapDiagnostics& d);
/// Binary forecast entropy h(gamma) = -(p+g)log(p+g) - (q-g)log(q-g).
double binary_entropy(const GapDiagnostics& d);
/// Entropy gap G(gamma) = h(gamma) - h(-gamma). Requires |gamma| < min(p, q).
double entropy_gap(const GapDiagnostics& d);

/// H(g1, g2) = p log((p-g2)/(p+g1)) + q log((q+g2)/(q-g1)); equals the
/// expected-log-score difference between f1 = (p+g1, q-g1) and
/// f2 = (p-g2, q+g2).
double h_indifference(double p, double gamma1, double gamma2);

/// Bisection root of H(., gamma2) in (0, gamma2); requires 0 < gamma2 < q < p.
/// The endpoints bracket by construction: H(0, g2) < 0 < H(g2, g2).
double gamma_star(double p, double gamma2, double tol = 1e-12);

/// Cosine of the angle between f = (p+g, q-g) and p = (p, q):
/// (||p||^2 + <gamma, p>) / (||p|| ||f||) with gamma = (g, -g).
double cos_angle(double p, double gamma);
/// Closed-form derivative dC/dgamma = -gamma / (||p|| ||f||^3).
double cos_angle_derivative(double p, double gamma);

}  // namespace scorelab
