#pragma once

#include <cstddef>
#include <vector>

#include "horseshoe/special_functions.hpp"

namespace horseshoe {

/// Rule used for the u-integral of the Laplace mixture.
///
/// The uniform rules run over a DawsonGrid on [0, u_max] and add the
/// integral beyond u_max in closed form from the large-u expansion of the
/// Dawson function. LogTrapezoid substitutes u = exp(s) and applies the
/// trapezoid rule on a fixed lattice in s; the integrand is analytic in a
/// strip around the real axis, so the error decays like exp(-4.9 / log_step).
enum class QuadratureScheme { RiemannMidpoint, Simpson, LogTrapezoid };

/// Rule used for the lambda-integral of the normal scale mixture.
/// TanSimpson: lambda = tan(theta), composite Simpson on (0, pi/2).
/// LogTrapezoid: lambda = exp(s), trapezoid on a fixed lattice in s.
enum class NormalRoute { LogTrapezoid, TanSimpson };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::LogTrapezoid;
  // Uniform schemes: grid [0, u_max] with n_points nodes (odd).
  double u_max = 200.0;
  std::size_t n_points = 40001;
  // Lattice spacing in log u (Laplace route) and log lambda (normal route).
  double log_step = 0.125;
  NormalRoute normal_route = NormalRoute::LogTrapezoid;
  std::size_t normal_points = 20001;  // TanSimpson only, odd
  // |x| / tau is never evaluated below this value.
  double x_floor = 1e-6;
  DawsonMode dawson = DawsonMode::Exact;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  /// Same rules with every resolution parameter scaled by `factor`.
  QuadratureSpec refined(double factor) const;
};

/// Normalized u-moments of the Laplace mixing kernel at a = |x| / tau:
///   I_m(a) = int_0^inf u^m exp(-a u) D+(u / sqrt 2) du.
struct LaplaceMoments {
  double log_i0;  // log I_0
  double mean;    // I_1 / I_0
  double second;  // I_2 / I_0
};

/// Precomputed nodes and log-weights for the Laplace-mixture integrals.
/// Immutable; share freely between threads.
class LaplaceMixtureQuadrature {
 public:
  explicit LaplaceMixtureQuadrature(const QuadratureSpec& spec);

  /// All three moments from one pass over the nodes, accumulated with a
  /// common log-scale shift so nothing underflows.
  LaplaceMoments moments(double a) const;

  std::size_t node_count() const { return u_.size(); }

 private:
  std::vector<double> u_;
  std::vector<double> log_weight_;  // log(w_k * D+(u_k / sqrt 2))
  double log_weight_max_ = 0.0;
  // LogTrapezoid: node k sits at log u = log_origin_ + k * log_step_.
  bool log_lattice_ = false;
  double log_origin_ = 0.0;
  double log_step_ = 0.0;
  bool has_tail_ = false;
  double tail_start_ = 0.0;
};

/// tau * p(x) for the normal scale mixture, as a function of a = |x| / tau.
double normal_mixture_integral(double a, const QuadratureSpec& spec);

}  // namespace horseshoe
