// Construction of controlled departures from ideal forecasts: binary
// (p, gamma) pairs and grid-sampled odd perturbations with the sign and
// magnitude constraints the forecast-pair analysis requires.
#pragma once

#include <string>
#include <utility>

#include "scorelab/core.hpp"

namespace scorelab {

enum class ShapeKind { bump, sine, tanh_step };

std::string to_string(ShapeKind kind);
ShapeKind shape_kind_from(const std::string& name);

/// Odd, bounded raw shapes w(x) with w(x) <= 0 for x > 0. The two scale
/// parameters are in x-units; their meaning per shape:
///   bump      - difference of Gaussians at ±center, each of the given width
///   sine      - one negative lobe of a sine over [center - width/2,
///               center + width/2], mirrored to the negative axis
///   tanh_step - -tanh(x/width) damped by a Gaussian envelope of scale
///               `center` (the envelope must decay at least as fast as the
///               target's tails for the feasibility bound to stay useful)
struct PerturbationShape {
  ShapeKind kind = ShapeKind::bump;
  double center = 1.0;
  double width = 0.6;

  static PerturbationShape bump(double center = 1.0, double width = 0.6);
  static PerturbationShape sine(double center = 1.0, double width = 2.0);
  static PerturbationShape tanh_step(double center = 1.0, double width = 0.5);

  /// Raw shape value before grid symmetrization.
  double raw(double x) const;
};

/// Full recipe for one perturbation, serializable for reproducibility.
struct PerturbationSpec {
  PerturbationShape shape;
  double epsilon = 0.0;

  /// Plain-text key/value block: one "key value" pair per line.
  std::string to_kv() const;
  static PerturbationSpec from_kv(const std::string& text);
};

/// f_plus = (p + gamma, q - gamma) and f_minus = (p - gamma, q + gamma).
/// Requires 0 < p < 1 and |gamma| < min(p, 1 - p).
std::pair<ProbVector, ProbVector> make_binary_pair(double p, double gamma);

/// Largest epsilon keeping eps * |w(x_i)| <= (1 - 1e-6) * p(x_i) everywhere.
double max_feasible_epsilon(const PerturbationShape& shape,
                            const GridDensity& target);

/// gamma = eps * w(x), symmetrized to exact grid oddness and validated
/// against the target. Throws naming the first violating grid point when
/// eps exceeds the feasible range.
OddPerturbation make_odd_perturbation(const PerturbationShape& shape,
                                      double eps, const GridDensity& target);

}  // namespace scorelab
