#include "scorelab/perturb.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace scorelab {

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::bump: return "bump";
    case ShapeKind::sine: return "sine";
    case ShapeKind::tanh_step: return "tanh-step";
  }
  return "?";
}

ShapeKind shape_kind_from(const std::string& name) {
  if (name == "bump") return ShapeKind::bump;
  if (name == "sine") return ShapeKind::sine;
  if (name == "tanh-step") return ShapeKind::tanh_step;
  throw std::invalid_argument("unknown perturbation shape: " + name);
}

PerturbationShape PerturbationShape::bump(double center, double width) {
  return {ShapeKind::bump, center, width};
}

PerturbationShape PerturbationShape::sine(double center, double width) {
  return {ShapeKind::sine, center, width};
}

PerturbationShape PerturbationShape::tanh_step(double center, double width) {
  return {ShapeKind::tanh_step, center, width};
}

double PerturbationShape::raw(double x) const {
  switch (kind) {
    case ShapeKind::bump: {
      const double a = (x - center) / width;
      const double b = (x + center) / width;
      return -(std::exp(-0.5 * a * a) - std::exp(-0.5 * b * b));
    }
    case ShapeKind::sine: {
      // one negative lobe over [center - width/2, center + width/2] on the
      // positive axis, odd image on the negative axis
      const double lo = center - 0.5 * width;
      const double hi = center + 0.5 * width;
      const double ax = std::abs(x);
      if (ax < lo || ax > hi) return 0.0;
      const double lobe = -std::sin(M_PI * (ax - lo) / width);
      return x >= 0.0 ? lobe : -lobe;
    }
    case ShapeKind::tanh_step:
      return -std::tanh(x / width) *
             std::exp(-0.5 * (x / center) * (x / center));
  }
  return 0.0;
}

std::string PerturbationSpec::to_kv() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "shape %s\ncenter %.17g\nwidth %.17g\nepsilon %.17g\n",
                to_string(shape.kind).c_str(), shape.center, shape.width,
                epsilon);
  return buf;
}

PerturbationSpec PerturbationSpec::from_kv(const std::string& text) {
  PerturbationSpec spec;
  std::istringstream in(text);
  std::string key;
  bool saw_shape = false;
  while (in >> key) {
    if (key == "shape") {
      std::string name;
      in >> name;
      spec.shape.kind = shape_kind_from(name);
      saw_shape = true;
    } else if (key == "center") {
      in >> spec.shape.center;
    } else if (key == "width") {
      in >> spec.shape.width;
    } else if (key == "epsilon") {
      in >> spec.epsilon;
    } else {
      throw std::invalid_argument("unknown perturbation key: " + key);
    }
    if (in.fail()) throw std::invalid_argument("malformed value for " + key);
  }
  if (!saw_shape) throw std::invalid_argument("perturbation block lacks shape");
  return spec;
}

std::pair<ProbVector, ProbVector> make_binary_pair(double p, double gamma) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("p = " + std::to_string(p) +
                            " violates 0 < p < 1");
  const double bound = std::min(p, 1.0 - p);
  if (!(std::abs(gamma) < bound))
    throw std::domain_error("|gamma| = " + std::to_string(std::abs(gamma)) +
                            " violates |gamma| < min(p, q) = " +
                            std::to_string(bound));
  const double q = 1.0 - p;
  // catches decimal edge cases where |gamma| < min(p, q) holds in floating
  // point yet a component still lands on 0 or 1 (e.g. p = 0.7, gamma = 0.3)
  for (double component : {p + gamma, q - gamma, p - gamma, q + gamma})
    if (!(component > 0.0 && component < 1.0))
      throw std::domain_error("forecast component " +
                              std::to_string(component) +
                              " violates the open interval (0, 1)");
  ProbVector plus = ProbVector::from({p + gamma, q - gamma});
  ProbVector minus = ProbVector::from({p - gamma, q + gamma});
  return {std::move(plus), std::move(minus)};
}

namespace {

// Exactly odd grid samples of the raw shape: w <- (w(x) - w(-x)) / 2 by
// index reflection, so floating-point shape evaluation cannot break the
// symmetry.
std::vector<double> sampled_odd_shape(const PerturbationShape& shape,
                                      const Grid& grid) {
  std::vector<double> raw(grid.n);
  for (int i = 0; i < grid.n; ++i) raw[i] = shape.raw(grid.x(i));
  std::vector<double> w(grid.n);
  for (int i = 0; i < grid.n; ++i)
    w[i] = 0.5 * (raw[i] - raw[grid.n - 1 - i]);
  // rounding at the ulp level must not leak past the sign constraint
  for (int i = 0; i < grid.n; ++i)
    if (grid.x(i) > 0.0 && w[i] > 0.0) w[i] = w[grid.n - 1 - i] = 0.0;
  return w;
}

}  // namespace

double max_feasible_epsilon(const PerturbationShape& shape,
                            const GridDensity& target) {
  if (!target.grid().symmetric())
    throw std::invalid_argument("target grid must be symmetric about 0");
  const std::vector<double> w = sampled_odd_shape(shape, target.grid());
  double eps = kInf;
  bool any = false;
  for (int i = 0; i < target.grid().n; ++i) {
    if (w[i] == 0.0) continue;
    any = true;
    eps = std::min(eps,
                   (1.0 - kPerturbationMargin) * target[i] / std::abs(w[i]));
  }
  if (!any) throw std::invalid_argument("shape is identically zero on grid");
  return eps;
}

OddPerturbation make_odd_perturbation(const PerturbationShape& shape,
                                      double eps, const GridDensity& target) {
  if (!(eps >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (!target.grid().symmetric())
    throw std::invalid_argument("target grid must be symmetric about 0");
  std::vector<double> w = sampled_odd_shape(shape, target.grid());
  for (int i = 0; i < target.grid().n; ++i) {
    w[i] *= eps;
    if (std::abs(w[i]) > (1.0 - kPerturbationMargin) * target[i]) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "epsilon %.9g infeasible: |gamma| = %.9g exceeds "
                    "(1 - 1e-6) * p = %.9g at point %d (x = %.9g)",
                    eps, std::abs(w[i]),
                    (1.0 - kPerturbationMargin) * target[i], i,
                    target.grid().x(i));
      throw std::invalid_argument(buf);
    }
  }
  return OddPerturbation::from(target.grid(), std::move(w),
                               /*sign_constrained=*/true);
}

}  // namespace scorelab
