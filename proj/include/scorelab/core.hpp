// Core value types for probabilistic forecasts on the simplex and on a
// uniform grid, plus the trapezoid quadrature primitives built on them.
#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scorelab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when an algorithm fails numerically (lost bracket, no convergence,
/// quadrature drift). Input validation uses std::invalid_argument /
/// std::domain_error instead.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform grid of n points spanning [lo, hi].
struct Grid {
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;

  double dx() const { return (hi - lo) / (n - 1); }
  double x(int i) const { return i == n - 1 ? hi : lo + i * dx(); }
  bool symmetric() const { return lo == -hi; }
  bool contains(double v) const { return v >= lo && v <= hi; }
  bool operator==(const Grid&) const = default;
};

/// Anything sampled on a grid: GridDensity, GridCDF, OddPerturbation,
/// GridFunction.
template <class T>
concept GridSampled = requires(const T& t) {
  { t.grid() } -> std::convertible_to<const Grid&>;
  { t.values() } -> std::convertible_to<std::span<const double>>;
};

/// Unconstrained grid samples; the quadrature workhorse.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);
  static GridFunction constant(const Grid& grid, double value);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

double trapezoid(const Grid& grid, std::span<const double> v);
/// Running integral from lo; result[0] = 0, result[i] = integral up to x_i.
std::vector<double> running_trapezoid(const Grid& grid,
                                      std::span<const double> v);
/// Linear interpolation of grid samples at x; throws std::domain_error
/// outside [lo, hi].
double interpolate(const Grid& grid, std::span<const double> v, double x);

/// Point on the m-simplex (m >= 2). Construction renormalizes when the sum
/// drifts by at most 1e-6 and rejects otherwise.
class ProbVector {
 public:
  static ProbVector from(std::vector<double> probs);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  explicit ProbVector(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

/// Canonical (p, gamma) parameterization of a binary forecast
/// (p + gamma, q - gamma). Both components must stay strictly inside (0, 1).
struct BinaryPerturbed {
  double p;
  double gamma;

  static BinaryPerturbed from(double p, double gamma);
  double q() const { return 1.0 - p; }
};

class GridCDF;

/// Nonnegative density sampled on a uniform grid, trapezoid-normalized.
/// Construction renormalizes when the integral is within 1e-4 of one and
/// rejects otherwise.
class GridDensity {
 public:
  static GridDensity from(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  /// Density at x by linear interpolation.
  double at(double x) const { return interpolate(grid_, values_, x); }

 private:
  GridDensity(Grid grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {}
  Grid grid_;
  std::vector<double> values_;
};

/// Running trapezoid integral of a GridDensity: nondecreasing, first value 0,
/// last value exactly 1.
class GridCDF {
 public:
  /// Accepts externally built CDF samples; validates monotonicity and
  /// endpoint targets, then renormalizes the final value to exactly 1.
  static GridCDF from(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  double at(double x) const { return interpolate(grid_, values_, x); }

 private:
  GridCDF(Grid grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {}
  Grid grid_;
  std::vector<double> values_;

  friend GridCDF cdf_of(const GridDensity& f);
};

GridCDF cdf_of(const GridDensity& f);

/// Inverse CDF by linear interpolation; u in [0, 1].
double quantile(const GridCDF& F, double u);

/// Signed departure gamma(x) on a symmetric grid with exact index-reflection
/// oddness: values[n-1-i] == -values[i]. Optionally sign-constrained
/// (gamma(x) <= 0 for x > 0).
class OddPerturbation {
 public:
  static OddPerturbation from(Grid grid, std::vector<double> values,
                              bool sign_constrained = false);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  bool sign_constrained() const { return sign_constrained_; }

  OddPerturbation scaled(double c) const;

 private:
  OddPerturbation(Grid grid, std::vector<double> values, bool sc)
      : grid_(grid), values_(std::move(values)), sign_constrained_(sc) {}
  Grid grid_;
  std::vector<double> values_;
  bool sign_constrained_;
};

inline constexpr double kPerturbationMargin = 1e-6;

/// |gamma(x_i)| <= (1 - 1e-6) * p(x_i) at every grid point.
bool is_valid_for(const OddPerturbation& gamma, const GridDensity& target);
/// Same check, throwing std::invalid_argument naming the first violating
/// grid point.
void require_valid_for(const OddPerturbation& gamma, const GridDensity& target);

/// Per-case and aggregate scores for one rule over a forecast/outcome set.
/// Scores are losses; +inf entries are permitted and propagate to the mean.
struct ScoreReport {
  std::string rule;
  std::vector<double> scores;
  double mean = 0.0;

  static ScoreReport from(std::string rule, std::vector<double> scores);
  int count() const { return static_cast<int>(scores.size()); }
};

// --- entropies, norms, inner products -------------------------------------

/// Shannon entropy -sum f_i log f_i with 0 log 0 = 0; in [0, log m].
double entropy(const ProbVector& f);
/// Trapezoid approximation of -int f log f with integrand 0 where f = 0.
double entropy(const GridDensity& f);

namespace detail {
double inner_product_impl(const Grid& a, std::span<const double> av,
                          const Grid& b, std::span<const double> bv);
}  // namespace detail

template <GridSampled A, GridSampled B>
double inner_product(const A& f, const B& g) {
  return detail::inner_product_impl(f.grid(), f.values(), g.grid(),
                                    g.values());
}

template <GridSampled A>
double l2_norm(const A& f) {
  return std::sqrt(inner_product(f, f));
}

double l2_norm(const ProbVector& f);

}  // namespace scorelab
