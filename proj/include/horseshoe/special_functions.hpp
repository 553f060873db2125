#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace horseshoe {

/// Dawson function D+(z) = exp(-z^2) * int_0^z exp(t^2) dt for z >= 0.
///
/// Positive-term series exp(-z^2) * sum z^(2k+1) / (k! (2k+1)) up to z = 6,
/// asymptotic expansion (1/2z) * sum (2k-1)!! / (2z^2)^k beyond. Absolute
/// error is below 1e-15 on [0, inf). Throws std::domain_error for negative
/// or non-finite z.
double dawson_exact(double z);

/// Lether's near-minimax rational approximation z * G(z), with G of degree
/// (6, 8) in z. Relative error against dawson_exact peaks at 6.13e-4
/// near z = 2.59.
double dawson_rational(double z);

enum class DawsonMode { Exact, Rational };

/// D+(u / sqrt 2) on the equispaced grid u = 0, step, ..., u_max.
/// Immutable once built.
class DawsonGrid {
 public:
  DawsonGrid(double u_max, double step, DawsonMode mode);

  double u_max() const { return u_max_; }
  double step() const { return step_; }
  std::size_t intervals() const { return values_.size() - 1; }
  std::size_t size() const { return values_.size(); }
  DawsonMode mode() const { return mode_; }

  /// Abscissa of node i; the last node is u_max exactly.
  double u(std::size_t i) const;
  std::span<const double> values() const { return values_; }

 private:
  double u_max_;
  double step_;
  DawsonMode mode_;
  std::vector<double> values_;
};

/// Throws std::invalid_argument unless u_max / step is an integer (to a
/// relative 1e-9) and both are positive and finite.
DawsonGrid build_dawson_grid(double u_max, double step, DawsonMode mode);

/// Evaluates the selected Dawson route.
double dawson(double z, DawsonMode mode);

}  // namespace horseshoe
