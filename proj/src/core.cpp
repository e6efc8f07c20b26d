#include "scorelab/core.hpp"

#include <algorithm>
#include <cstdio>

namespace scorelab {

namespace {

void require_grid(const Grid& grid, std::size_t count) {
  if (grid.n < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!(grid.hi > grid.lo)) throw std::invalid_argument("grid needs hi > lo");
  if (count != static_cast<std::size_t>(grid.n))
    throw std::invalid_argument("value count does not match grid size");
}

std::string point_label(const Grid& grid, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "point %d (x = %.9g)", i, grid.x(i));
  return buf;
}

}  // namespace

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  require_grid(grid_, values_.size());
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
  return GridFunction(grid, std::vector<double>(grid.n, value));
}

double trapezoid(const Grid& grid, std::span<const double> v) {
  double sum = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += v[i];
  return sum * grid.dx();
}

std::vector<double> running_trapezoid(const Grid& grid,
                                      std::span<const double> v) {
  std::vector<double> out(v.size());
  out[0] = 0.0;
  const double dx = grid.dx();
  for (std::size_t i = 1; i < v.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (v[i - 1] + v[i]) * dx;
  return out;
}

double interpolate(const Grid& grid, std::span<const double> v, double x) {
  if (!grid.contains(x))
    throw std::domain_error("point outside grid domain [" +
                            std::to_string(grid.lo) + ", " +
                            std::to_string(grid.hi) + "]");
  int i = static_cast<int>((x - grid.lo) / grid.dx());
  i = std::clamp(i, 0, grid.n - 2);
  const double t = (x - grid.x(i)) / grid.dx();
  return v[i] + (v[i + 1] - v[i]) * t;
}

ProbVector ProbVector::from(std::vector<double> probs) {
  if (probs.size() < 2)
    throw std::invalid_argument("probability vector needs m >= 2 entries");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0))
      throw std::invalid_argument("probability entries must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum) +
                                ", beyond the 1e-6 drift budget");
  for (double& p : probs) p /= sum;
  return ProbVector(std::move(probs));
}

BinaryPerturbed BinaryPerturbed::from(double p, double gamma) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("p must lie strictly inside (0, 1)");
  const double a = p + gamma;
  const double b = (1.0 - p) - gamma;
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("p + gamma = " + std::to_string(a) +
                                " leaves (0, 1)");
  if (!(b > 0.0 && b < 1.0))
    throw std::invalid_argument("q - gamma = " + std::to_string(b) +
                                " leaves (0, 1)");
  return BinaryPerturbed{p, gamma};
}

GridDensity GridDensity::from(Grid grid, std::vector<double> values) {
  require_grid(grid, values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(values[i] >= 0.0))
      throw std::invalid_argument("density negative at " +
                                  point_label(grid, static_cast<int>(i)));
  const double integral = trapezoid(grid, values);
  if (std::abs(integral - 1.0) > 1e-4)
    throw std::invalid_argument("density integrates to " +
                                std::to_string(integral) +
                                ", beyond the 1e-4 drift budget");
  for (double& v : values) v /= integral;
  return GridDensity(grid, std::move(values));
}

GridCDF GridCDF::from(Grid grid, std::vector<double> values) {
  require_grid(grid, values.size());
  if (std::abs(values.front()) > 1e-9)
    throw std::invalid_argument("CDF must start at 0");
  if (std::abs(values.back() - 1.0) > 1e-9)
    throw std::invalid_argument("CDF must end at 1, got " +
                                std::to_string(values.back()));
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1] - 1e-12)
      throw std::invalid_argument("CDF decreases at " +
                                  point_label(grid, static_cast<int>(i)));
  const double total = values.back();
  for (double& v : values) v = std::clamp(v / total, 0.0, 1.0);
  values.front() = 0.0;
  values.back() = 1.0;
  return GridCDF(grid, std::move(values));
}

GridCDF cdf_of(const GridDensity& f) {
  std::vector<double> run = running_trapezoid(f.grid(), f.values());
  const double total = run.back();
  for (double& v : run) v = std::clamp(v / total, 0.0, 1.0);
  run.back() = 1.0;
  return GridCDF(f.grid(), std::move(run));
}

double quantile(const GridCDF& F, double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("quantile level must lie in [0, 1]");
  const auto v = F.values();
  auto it = std::lower_bound(v.begin() + 1, v.end(), u);
  const int i = static_cast<int>(it - v.begin());
  const double lo = v[i - 1], hi = v[i];
  const double t = hi > lo ? (u - lo) / (hi - lo) : 0.0;
  return F.grid().x(i - 1) + t * F.grid().dx();
}

OddPerturbation OddPerturbation::from(Grid grid, std::vector<double> values,
                                      bool sign_constrained) {
  require_grid(grid, values.size());
  if (!grid.symmetric())
    throw std::invalid_argument("odd perturbation needs a grid symmetric "
                                "about 0 (lo = -hi)");
  const int n = grid.n;
  for (int i = 0; i < n; ++i)
    if (values[i] != -values[n - 1 - i])
      throw std::invalid_argument("perturbation not exactly odd at " +
                                  point_label(grid, i));
  if (sign_constrained)
    for (int i = 0; i < n; ++i)
      if (grid.x(i) > 0.0 && values[i] > 0.0)
        throw std::invalid_argument("sign-constrained perturbation positive "
                                    "at " + point_label(grid, i));
  return OddPerturbation(grid, std::move(values), sign_constrained);
}

OddPerturbation OddPerturbation::scaled(double c) const {
  if (!(c >= 0.0))
    throw std::invalid_argument("scale factor must be >= 0");
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return OddPerturbation(grid_, std::move(v), sign_constrained_);
}

bool is_valid_for(const OddPerturbation& gamma, const GridDensity& target) {
  if (gamma.grid() != target.grid()) return false;
  for (int i = 0; i < gamma.grid().n; ++i)
    if (std::abs(gamma[i]) > (1.0 - kPerturbationMargin) * target[i])
      return false;
  return true;
}

void require_valid_for(const OddPerturbation& gamma,
                       const GridDensity& target) {
  if (gamma.grid() != target.grid())
    throw std::invalid_argument("perturbation and target grids differ");
  for (int i = 0; i < gamma.grid().n; ++i)
    if (std::abs(gamma[i]) > (1.0 - kPerturbationMargin) * target[i])
      throw std::invalid_argument(
          "perturbation exceeds (1 - 1e-6) * target at " +
          point_label(gamma.grid(), i));
}

ScoreReport ScoreReport::from(std::string rule, std::vector<double> scores) {
  if (scores.empty()) throw std::invalid_argument("no scores to report");
  double sum = 0.0;
  for (double s : scores) sum += s;
  ScoreReport report;
  report.rule = std::move(rule);
  report.mean = sum / static_cast<double>(scores.size());
  report.scores = std::move(scores);
  return report;
}

double entropy(const ProbVector& f) {
  double h = 0.0;
  for (double p : f.probs())
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

double entropy(const GridDensity& f) {
  std::vector<double> integrand(f.grid().n, 0.0);
  for (int i = 0; i < f.grid().n; ++i)
    if (f[i] > 0.0) integrand[i] = -f[i] * std::log(f[i]);
  return trapezoid(f.grid(), integrand);
}

namespace detail {

double inner_product_impl(const Grid& a, std::span<const double> av,
                          const Grid& b, std::span<const double> bv) {
  if (a != b) throw std::invalid_argument("grid mismatch in inner product");
  double sum = 0.5 * (av.front() * bv.front() + av.back() * bv.back());
  for (std::size_t i = 1; i + 1 < av.size(); ++i) sum += av[i] * bv[i];
  return sum * a.dx();
}

}  // namespace detail

double l2_norm(const ProbVector& f) {
  double sum = 0.0;
  for (double p : f.probs()) sum += p * p;
  return std::sqrt(sum);
}

}  // namespace scorelab
