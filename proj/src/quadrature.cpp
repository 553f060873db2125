#include "horseshoe/quadrature.hpp"

#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace horseshoe {

namespace {

constexpr double kLogUMin = -40.0;
constexpr double kLogUMax = 45.0;
// Terms more than this many e-folds below the largest are dropped.
constexpr double kNegligible = 40.0;

// Generalized exponential integral E_n(z), z > 0, for n >= -1.
double expint_n(int n, double z) {
  if (n == -1) return std::exp(-z) * (1.0 / z + 1.0 / (z * z));
  if (n == 0) return std::exp(-z) / z;
  return boost::math::expint(static_cast<unsigned>(n), z);
}

// int_U^inf u^m exp(-a u) D+(u / sqrt 2) du from
// D+(u / sqrt 2) ~ (1 / (sqrt(2) u)) * sum_k (2k-1)!! / u^(2k).
double dawson_tail_moment(int m, double a, double start) {
  constexpr double kDoubleFactorial[] = {1.0, 1.0, 3.0, 15.0, 105.0};
  double total = 0.0;
  for (int k = 0; k < 5; ++k) {
    const int n = 2 * k + 1 - m;
    total += kDoubleFactorial[k] * std::pow(start, 1 - n) * expint_n(n, a * start);
  }
  return total / std::numbers::sqrt2;
}

bool is_odd(std::size_t n) { return n % 2 == 1; }

}  // namespace

void QuadratureSpec::validate() const {
  if (!(std::isfinite(u_max) && u_max > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: u_max must be positive");
  }
  if (n_points < 100 || !is_odd(n_points)) {
    throw std::invalid_argument("QuadratureSpec: n_points must be odd and >= 100");
  }
  if (!(std::isfinite(log_step) && log_step > 0.0 && log_step <= 0.5)) {
    throw std::invalid_argument("QuadratureSpec: log_step must be in (0, 0.5]");
  }
  if (normal_points < 100 || !is_odd(normal_points)) {
    throw std::invalid_argument("QuadratureSpec: normal_points must be odd and >= 100");
  }
  if (!(std::isfinite(x_floor) && x_floor > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: x_floor must be positive");
  }
}

QuadratureSpec QuadratureSpec::refined(double factor) const {
  QuadratureSpec out = *this;
  auto scale_points = [factor](std::size_t n) {
    auto intervals = static_cast<std::size_t>(std::llround(static_cast<double>(n - 1) * factor));
    if (intervals % 2 == 1) ++intervals;
    return intervals + 1;
  };
  out.n_points = scale_points(n_points);
  out.normal_points = scale_points(normal_points);
  out.log_step = log_step / factor;
  return out;
}

LaplaceMixtureQuadrature::LaplaceMixtureQuadrature(const QuadratureSpec& spec) {
  spec.validate();
  auto push = [this](double u, double weight, double d) {
    if (d <= 0.0) return;  // the u = 0 node carries D+(0) = 0
    u_.push_back(u);
    log_weight_.push_back(std::log(weight) + std::log(d));
  };

  if (spec.scheme == QuadratureScheme::LogTrapezoid) {
    const double h = spec.log_step;
    const auto k_lo = static_cast<long>(std::floor(kLogUMin / h));
    const auto k_hi = static_cast<long>(std::ceil(kLogUMax / h));
    for (long k = k_lo; k <= k_hi; ++k) {
      const double u = std::exp(static_cast<double>(k) * h);
      push(u, h * u, dawson(u / std::numbers::sqrt2, spec.dawson));
    }
    log_lattice_ = true;
    log_origin_ = static_cast<double>(k_lo) * h;
    log_step_ = h;
  } else {
    const double step = spec.u_max / static_cast<double>(spec.n_points - 1);
    const DawsonGrid grid(spec.u_max, step, spec.dawson);
    const auto values = grid.values();
    const std::size_t last = grid.intervals();
    if (spec.scheme == QuadratureScheme::Simpson) {
      for (std::size_t i = 0; i <= last; ++i) {
        const double w = (i == 0 || i == last) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        push(grid.u(i), w * step / 3.0, values[i]);
      }
    } else {
      // Midpoint rule on panels of width 2 * step; midpoints are the odd nodes.
      for (std::size_t i = 1; i < last; i += 2) push(grid.u(i), 2.0 * step, values[i]);
    }
    has_tail_ = true;
    tail_start_ = spec.u_max;
  }
  log_weight_max_ = *std::max_element(log_weight_.begin(), log_weight_.end());
}

LaplaceMoments LaplaceMixtureQuadrature::moments(double a) const {
  if (!(std::isfinite(a) && a > 0.0)) {
    throw std::domain_error("LaplaceMixtureQuadrature: a must be positive and finite");
  }
  const std::size_t n = u_.size();
  // Below u = e^-20 / max(a, 1) the integrand is O(u^2) and contributes
  // less than e^-40 relative to I_0.
  std::size_t begin = 0;
  if (log_lattice_) {
    const double s_start = -20.0 - std::log(std::max(a, 1.0));
    const double idx = std::floor((s_start - log_origin_) / log_step_);
    begin = idx > 0.0 ? std::min(static_cast<std::size_t>(idx), n - 1) : 0;
  }
  double shift = -std::numeric_limits<double>::infinity();
  std::size_t end = n;
  for (std::size_t k = begin; k < n; ++k) {
    if (log_weight_max_ - a * u_[k] < shift - kNegligible) {
      end = k;
      break;
    }
    shift = std::max(shift, log_weight_[k] - a * u_[k]);
  }
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t k = begin; k < end; ++k) {
    const double d = log_weight_[k] - a * u_[k] - shift;
    if (d < -kNegligible) continue;
    const double e = std::exp(d);
    s0 += e;
    s1 += e * u_[k];
    s2 += e * u_[k] * u_[k];
  }

  if (has_tail_ && a * tail_start_ < 700.0) {
    const double scale = std::exp(shift);
    const double i0 = scale * s0 + dawson_tail_moment(0, a, tail_start_);
    const double i1 = scale * s1 + dawson_tail_moment(1, a, tail_start_);
    const double i2 = scale * s2 + dawson_tail_moment(2, a, tail_start_);
    return {std::log(i0), i1 / i0, i2 / i0};
  }
  return {shift + std::log(s0), s1 / s0, s2 / s0};
}

double normal_mixture_integral(double a, const QuadratureSpec& spec) {
  if (!(std::isfinite(a) && a > 0.0)) {
    throw std::domain_error("normal_mixture_integral: a must be positive and finite");
  }
  const double norm = (2.0 / std::numbers::pi) / std::sqrt(2.0 * std::numbers::pi);
  const double a2 = a * a;

  if (spec.normal_route == NormalRoute::LogTrapezoid) {
    // lambda = exp(s):  N(a; 0, lambda^2) * (1 + lambda^2)^-1 * lambda ds
    const double h = spec.log_step;
    const double s_lo = std::log(a) - 3.5;  // exp(-e^7 / 2) underflows
    const double s_hi = std::max(std::log(a), 0.0) + 40.0;
    const auto k_lo = static_cast<long>(std::floor(s_lo / h));
    const auto k_hi = static_cast<long>(std::ceil(s_hi / h));
    double sum = 0.0;
    for (long k = k_lo; k <= k_hi; ++k) {
      const double s = static_cast<double>(k) * h;
      sum += std::exp(-0.5 * a2 * std::exp(-2.0 * s)) / (1.0 + std::exp(2.0 * s));
    }
    return norm * h * sum;
  }

  // lambda = tan(theta); (1 + lambda^2)^-1 cancels the Jacobian sec^2(theta).
  const std::size_t last = spec.normal_points - 1;
  const double h = (std::numbers::pi / 2.0) / static_cast<double>(last);
  double sum = 0.0;
  for (std::size_t j = 1; j < last; ++j) {
    const double theta = h * static_cast<double>(j);
    const double cot = std::cos(theta) / std::sin(theta);
    const double f = cot * std::exp(-0.5 * a2 * cot * cot);
    sum += (j % 2 == 1 ? 4.0 : 2.0) * f;
  }
  return norm * h / 3.0 * sum;
}

}  // namespace horseshoe
