#include "scorelab/categorical.hpp"

#include <algorithm>
#include <cmath>

namespace scorelab {

namespace {

void require_outcome(const ProbVector& f, CategoricalOutcome j) {
  if (j.index < 1 || j.index > f.size())
    throw std::domain_error("outcome index " + std::to_string(j.index) +
                            " out of range [1, " + std::to_string(f.size()) +
                            "]");
}

void require_gap_domain(const GapDiagnostics& d, double lo) {
  if (!(d.p > 0.0 && d.p < 1.0))
    throw std::domain_error("p must lie strictly inside (0, 1)");
  const double bound = std::min(d.p, d.q());
  if (!(d.gamma > lo && d.gamma < bound))
    throw std::domain_error("gamma = " + std::to_string(d.gamma) +
                            " outside (" + std::to_string(lo) + ", " +
                            std::to_string(bound) + ")");
}

}  // namespace

std::string to_string(CategoricalRule rule) {
  switch (rule) {
    case CategoricalRule::brier: return "brier";
    case CategoricalRule::log: return "log";
    case CategoricalRule::spherical: return "spherical";
    case CategoricalRule::rps: return "rps";
  }
  return "?";
}

CategoricalRule categorical_rule_from(const std::string& name) {
  if (name == "brier") return CategoricalRule::brier;
  if (name == "log") return CategoricalRule::log;
  if (name == "spherical") return CategoricalRule::spherical;
  if (name == "rps") return CategoricalRule::rps;
  throw std::invalid_argument("unknown categorical rule: " + name);
}

double brier_score(const ProbVector& f, CategoricalOutcome j) {
  require_outcome(f, j);
  double sum = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double d = f[i] - (i + 1 == j.index ? 1.0 : 0.0);
    sum += d * d;
  }
  return sum / f.size();
}

double log_score(const ProbVector& f, CategoricalOutcome j) {
  require_outcome(f, j);
  const double fj = f[j.index - 1];
  return fj > 0.0 ? -std::log(fj) : kInf;
}

double spherical_score(const ProbVector& f, CategoricalOutcome j) {
  require_outcome(f, j);
  const double norm = l2_norm(f);
  return -f[j.index - 1] / norm;
}

double rps_score(const ProbVector& f, CategoricalOutcome j) {
  require_outcome(f, j);
  double cumulative = 0.0;
  double sum = 0.0;
  for (int k = 1; k < f.size(); ++k) {
    cumulative += f[k - 1];
    const double d = cumulative - (k >= j.index ? 1.0 : 0.0);
    sum += d * d;
  }
  return sum / (f.size() - 1);
}

double score(CategoricalRule rule, const ProbVector& f, CategoricalOutcome j) {
  switch (rule) {
    case CategoricalRule::brier: return brier_score(f, j);
    case CategoricalRule::log: return log_score(f, j);
    case CategoricalRule::spherical: return spherical_score(f, j);
    case CategoricalRule::rps: return rps_score(f, j);
  }
  throw std::invalid_argument("unknown rule");
}

double expected_score(CategoricalRule rule, const ProbVector& f,
                      const ProbVector& p) {
  if (f.size() != p.size())
    throw std::invalid_argument("forecast and target sizes differ");
  double sum = 0.0;
  for (int j = 1; j <= p.size(); ++j) {
    const double pj = p[j - 1];
    if (pj == 0.0) continue;  // zero-probability outcomes contribute nothing
    sum += pj * score(rule, f, CategoricalOutcome{j});
  }
  return sum;
}

double expected_ls_gap(const GapDiagnostics& d) {
  require_gap_domain(d, 0.0);
  const double q = d.q();
  return d.p * std::log((d.p - d.gamma) / (d.p + d.gamma)) +
         q * std::log((q + d.gamma) / (q - d.gamma));
}

double expected_ls_gap_derivative(const GapDiagnostics& d) {
  require_gap_domain(d, 0.0);
  const double q = d.q();
  const double p2 = d.p * d.p, q2 = q * q, g2 = d.gamma * d.gamma;
  return 2.0 * g2 * (p2 - q2) / ((p2 - g2) * (q2 - g2));
}

double binary_entropy(const GapDiagnostics& d) {
  const double a = d.p + d.gamma;
  const double b = d.q() - d.gamma;
  if (!(a >= 0.0 && b >= 0.0))
    throw std::domain_error("perturbed component left [0, 1]");
  double h = 0.0;
  if (a > 0.0) h -= a * std::log(a);
  if (b > 0.0) h -= b * std::log(b);
  return h;
}

double entropy_gap(const GapDiagnostics& d) {
  if (!(d.p > 0.0 && d.p < 1.0))
    throw std::domain_error("p must lie strictly inside (0, 1)");
  const double bound = std::min(d.p, d.q());
  if (!(std::abs(d.gamma) < bound))
    throw std::domain_error("|gamma| must stay below min(p, q)");
  return binary_entropy(d) - binary_entropy({d.p, -d.gamma});
}

double h_indifference(double p, double gamma1, double gamma2) {
  const double q = 1.0 - p;
  const double a = p + gamma1, b = q - gamma1;
  const double c = p - gamma2, e = q + gamma2;
  for (double v : {a, b, c, e})
    if (!(v > 0.0 && v < 1.0))
      throw std::domain_error("perturbed component left (0, 1) in H");
  return p * std::log(c / a) + q * std::log(e / b);
}

double gamma_star(double p, double gamma2, double tol) {
  const double q = 1.0 - p;
  if (!(gamma2 > 0.0 && gamma2 < q && q < p))
    throw std::domain_error("gamma_star requires 0 < gamma2 < q < p");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  double a = 0.0, b = gamma2;
  const double fa = h_indifference(p, a, gamma2);
  const double fb = h_indifference(p, b, gamma2);
  if (!(fa < 0.0 && fb > 0.0))
    throw NumericError("bracket failure: H(0, g2) = " + std::to_string(fa) +
                       ", H(g2, g2) = " + std::to_string(fb));
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (a + b);
    const double fm = h_indifference(p, mid, gamma2);
    if (std::abs(fm) < tol) return mid;
    (fm < 0.0 ? a : b) = mid;
  }
  throw NumericError("gamma_star did not converge after 200 iterations");
}

double cos_angle(double p, double gamma) {
  const double q = 1.0 - p;
  const double f1 = p + gamma, f2 = q - gamma;
  if (!(p > 0.0 && p < 1.0) || !(f1 > 0.0) || !(f2 > 0.0))
    throw std::domain_error("cos_angle needs positive forecast components");
  const double norm_p2 = p * p + q * q;
  const double gamma_dot_p = gamma * (p - q);
  const double norm_f = std::sqrt(f1 * f1 + f2 * f2);
  return (norm_p2 + gamma_dot_p) / (std::sqrt(norm_p2) * norm_f);
}

double cos_angle_derivative(double p, double gamma) {
  const double q = 1.0 - p;
  const double f1 = p + gamma, f2 = q - gamma;
  if (!(p > 0.0 && p < 1.0) || !(f1 > 0.0) || !(f2 > 0.0))
    throw std::domain_error("cos_angle needs positive forecast components");
  const double norm_p = std::sqrt(p * p + q * q);
  const double norm_f = std::sqrt(f1 * f1 + f2 * f2);
  return -gamma / (norm_p * norm_f * norm_f * norm_f);
}

}  // namespace scorelab
