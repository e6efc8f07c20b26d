#include "scorelab/continuous.hpp"

#include <algorithm>
#include <cmath>

namespace scorelab {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (a != b) throw std::invalid_argument("grid mismatch");
}

}  // namespace

DensityForecastPair DensityForecastPair::from(GridDensity target,
                                              OddPerturbation gamma) {
  require_valid_for(gamma, target);
  return DensityForecastPair(std::move(target), std::move(gamma));
}

GridDensity DensityForecastPair::plus() const {
  std::vector<double> v(target_.values().begin(), target_.values().end());
  for (int i = 0; i < target_.grid().n; ++i) v[i] += gamma_[i];
  return GridDensity::from(target_.grid(), std::move(v));
}

GridDensity DensityForecastPair::minus() const {
  std::vector<double> v(target_.values().begin(), target_.values().end());
  for (int i = 0; i < target_.grid().n; ++i) v[i] -= gamma_[i];
  return GridDensity::from(target_.grid(), std::move(v));
}

std::string to_string(DensityRule rule) {
  switch (rule) {
    case DensityRule::quadratic: return "quadratic";
    case DensityRule::log: return "log";
    case DensityRule::spherical: return "spherical";
    case DensityRule::crps: return "crps";
  }
  return "?";
}

DensityRule density_rule_from(const std::string& name) {
  if (name == "quadratic") return DensityRule::quadratic;
  if (name == "log") return DensityRule::log;
  if (name == "spherical") return DensityRule::spherical;
  if (name == "crps") return DensityRule::crps;
  throw std::invalid_argument("unknown density rule: " + name);
}

double quadratic_score(const GridDensity& f, double x) {
  return inner_product(f, f) - 2.0 * f.at(x);
}

double expected_quadratic(const GridDensity& f, const GridDensity& p) {
  require_same_grid(f.grid(), p.grid());
  double diff2 = 0.0, norm2 = 0.0;
  const int n = f.grid().n;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    const double d = f[i] - p[i];
    diff2 += w * d * d;
    norm2 += w * p[i] * p[i];
  }
  return (diff2 - norm2) * f.grid().dx();
}

double log_score(const GridDensity& f, double x) {
  const double fx = f.at(x);
  return fx > 0.0 ? -std::log(fx) : kInf;
}

double expected_log(const GridDensity& f, const GridDensity& p) {
  require_same_grid(f.grid(), p.grid());
  const int n = f.grid().n;
  std::vector<double> integrand(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (p[i] == 0.0) continue;
    if (f[i] <= 0.0) return kInf;  // support violation
    integrand[i] = -p[i] * std::log(f[i]);
  }
  return trapezoid(f.grid(), integrand);
}

double expected_ls_gap(const DensityForecastPair& pair) {
  const GridDensity& p = pair.target();
  const OddPerturbation& g = pair.gamma();
  const int n = p.grid().n;
  std::vector<double> integrand(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (p[i] == 0.0) continue;
    integrand[i] = p[i] * std::log((p[i] - g[i]) / (p[i] + g[i]));
  }
  return trapezoid(p.grid(), integrand);
}

double spherical_score(const GridDensity& f, double x) {
  return -f.at(x) / l2_norm(f);
}

double expected_spherical(const GridDensity& f, const GridDensity& p) {
  require_same_grid(f.grid(), p.grid());
  return -inner_product(f, p) / l2_norm(f);
}

CrpsEvaluator::CrpsEvaluator(const GridCDF& F)
    : grid_(F.grid()), cdf_(F.values().begin(), F.values().end()) {
  const int n = grid_.n;
  below_.resize(n);
  above_.resize(n);
  below_[0] = above_[0] = 0.0;
  const double dx = grid_.dx();
  for (int i = 1; i < n; ++i) {
    const double a = cdf_[i - 1], b = cdf_[i];
    below_[i] = below_[i - 1] + 0.5 * (a * a + b * b) * dx;
    const double am = a - 1.0, bm = b - 1.0;
    above_[i] = above_[i - 1] + 0.5 * (am * am + bm * bm) * dx;
  }
}

double CrpsEvaluator::at(double x) const {
  if (!grid_.contains(x))
    throw std::domain_error("outcome outside grid domain");
  int i = static_cast<int>((x - grid_.lo) / grid_.dx());
  i = std::clamp(i, 0, grid_.n - 2);
  const double left = x - grid_.x(i);
  const double t = left / grid_.dx();
  const double fx = cdf_[i] + (cdf_[i + 1] - cdf_[i]) * t;
  const double below = below_[i] + 0.5 * (cdf_[i] * cdf_[i] + fx * fx) * left;
  const double fim = cdf_[i] - 1.0, fxm = fx - 1.0;
  const double above_up_to_x =
      above_[i] + 0.5 * (fim * fim + fxm * fxm) * left;
  return below + (above_.back() - above_up_to_x);
}

double crps(const GridCDF& F, double x) { return CrpsEvaluator(F).at(x); }

double expected_crps(const GridCDF& F, const GridDensity& p) {
  require_same_grid(F.grid(), p.grid());
  const GridCDF P = cdf_of(p);
  const int n = p.grid().n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    const double d = F[i] - P[i];
    sum += w * (P[i] * (1.0 - P[i]) + d * d);
  }
  return sum * p.grid().dx();
}

double mse_criterion(const DensityForecastPair& pair, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");
  const GridDensity& p = pair.target();
  std::vector<double> g(pair.gamma().values().begin(),
                        pair.gamma().values().end());
  if (sign < 0)
    for (double& v : g) v = -v;
  const std::vector<double> big_gamma = running_trapezoid(p.grid(), g);
  const int n = p.grid().n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += w * p[i] * big_gamma[i] * big_gamma[i];
  }
  return sum * p.grid().dx();
}

double h_functional(const GridDensity& p, const OddPerturbation& gamma1,
                    const OddPerturbation& gamma2) {
  require_valid_for(gamma1, p);
  require_valid_for(gamma2, p);
  const int n = p.grid().n;
  std::vector<double> integrand(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (p[i] == 0.0) continue;
    integrand[i] = p[i] * std::log((p[i] - gamma2[i]) / (p[i] + gamma1[i]));
  }
  return trapezoid(p.grid(), integrand);
}

double score(DensityRule rule, const GridDensity& f, double x) {
  switch (rule) {
    case DensityRule::quadratic: return quadratic_score(f, x);
    case DensityRule::log: return log_score(f, x);
    case DensityRule::spherical: return spherical_score(f, x);
    case DensityRule::crps: return crps(cdf_of(f), x);
  }
  throw std::invalid_argument("unknown rule");
}

double expected_score(DensityRule rule, const GridDensity& f,
                      const GridDensity& p) {
  switch (rule) {
    case DensityRule::quadratic: return expected_quadratic(f, p);
    case DensityRule::log: return expected_log(f, p);
    case DensityRule::spherical: return expected_spherical(f, p);
    case DensityRule::crps: return expected_crps(cdf_of(f), p);
  }
  throw std::invalid_argument("unknown rule");
}

}  // namespace scorelab
