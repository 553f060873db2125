#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "horseshoe/quadrature.hpp"

namespace horseshoe {

/// Raised when a density or penalty is requested below the floor
/// |x| < x_floor * tau, where the horseshoe density diverges.
class BelowFloorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct HorseshoeParams {
  double tau = 1.0;
  QuadratureSpec quad;

  void validate() const;
};

/// Marginal horseshoe prior for one coordinate with global scale tau.
///
/// Two independent evaluation routes are provided: the half-Cauchy normal
/// scale mixture and the Laplace scale mixture with Dawson mixing density,
///   p(x) = 2 / (pi^1.5 tau) * int_0^inf exp(-u |x| / tau) D+(u / sqrt 2) du.
/// The penalty and its derivatives come from the Laplace route. Copies share
/// the precomputed quadrature table.
class Horseshoe {
 public:
  /// Default quadrature; the table is built once per process.
  explicit Horseshoe(double tau);
  explicit Horseshoe(HorseshoeParams params);

  /// Same quadrature table, different global scale.
  Horseshoe with_tau(double tau) const;

  const HorseshoeParams& params() const { return params_; }
  double tau() const { return params_.tau; }
  /// Smallest |x| accepted by the unclamped evaluators: x_floor * tau.
  double floor() const { return params_.quad.x_floor * params_.tau; }

  double log_density_laplace_mixture(double x) const;
  double density_laplace_mixture(double x) const;
  double log_density_normal_mixture(double x) const;
  double density_normal_mixture(double x) const;

  /// -log p(x).
  double penalty(double x) const;

  /// pen'(|x|) = [int (u/tau) e^{-u|x|/tau} D+ du] / [int e^{-u|x|/tau} D+ du].
  /// Both integrals share one pass and one log-scale shift, so the ratio
  /// stays finite for any representable |x| / tau.
  double penalty_derivative(double x_abs) const;

  /// pen''(|x|) = -(Var of u under the tilted kernel) / tau^2; never positive.
  double penalty_second_derivative(double x_abs) const;

  /// penalty(max(|x|, floor())): the value used in solver objectives.
  double clamped_penalty(double x) const;
  /// penalty_derivative(max(|x|, floor())): the LLA weight for iterate x.
  double weight(double x) const;

 private:
  Horseshoe(HorseshoeParams params, std::shared_ptr<const LaplaceMixtureQuadrature> table);
  double scaled_abs(double x, const char* who) const;

  HorseshoeParams params_;
  std::shared_ptr<const LaplaceMixtureQuadrature> laplace_;
};

/// max over the grid of |log p_laplace(x) - log p_normal(x)|.
double validate_representation(std::span<const double> x_grid, const Horseshoe& prior);

/// Function whose sign pattern is examined by monotonicity_report.
enum class MonotoneTarget { Density, PenaltyDerivative };

struct OrderCheck {
  int order = 0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  // min over points of (-1)^k * diff / stencil mass; >= -slack passes.
  double worst = 0.0;
  bool pass = true;
};

struct MonotonicityReport {
  double step = 0.0;
  double slack = 0.0;
  std::vector<OrderCheck> orders;

  bool all_pass() const;
};

/// Sign table of the forward differences Delta^k f, k = 0..order_max, for
/// samples on an equispaced grid. Order k passes when every
/// (-1)^k Delta^k f_i >= -slack * sum_j C(k, j) |f_{i+j}|, the right-hand
/// scale being the rounding floor of that difference.
MonotonicityReport alternating_sign_report(std::span<const double> values, int order_max,
                                           double slack);

/// Complete-monotonicity check of p(|x|) or pen'(|x|) on a strictly
/// positive equispaced grid. Throws std::invalid_argument for order_max
/// outside [0, 4], a non-equispaced or non-positive grid, or a grid with
/// fewer than order_max + 2 points.
MonotonicityReport monotonicity_report(int order_max, std::span<const double> x_grid,
                                       const Horseshoe& prior,
                                       MonotoneTarget target = MonotoneTarget::Density,
                                       double slack = 1e-6);

/// Largest second difference of the penalty over the grid; strict
/// concavity means the result is negative.
double max_penalty_second_difference(std::span<const double> x_grid, const Horseshoe& prior);

/// n equispaced points on [lo, hi]; n == 1 yields {lo}.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// `points` equispaced values on [-half_width, half_width] with those inside
/// the open window (-window, window) removed. The defaults give the 400-point
/// grid used to compare the two mixture routes.
std::vector<double> representation_grid(double half_width = 2.0, std::size_t points = 401,
                                        double window = 0.01);

}  // namespace horseshoe
