#include "horseshoe/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace horseshoe {

namespace {

constexpr double kSeriesLimit = 6.0;

void require_nonnegative_finite(double z, const char* who) {
  if (!std::isfinite(z) || z < 0.0) {
    throw std::domain_error(std::string(who) + ": argument must be finite and >= 0, got " +
                            std::to_string(z));
  }
}

// exp(-z^2) * sum_k z^(2k+1) / (k! (2k+1)); every term is positive.
double dawson_series(double z) {
  const double z2 = z * z;
  double power = z;  // z^(2k+1) / k!
  double sum = z;
  for (int k = 1; k < 1000; ++k) {
    power *= z2 / k;
    const double term = power / (2 * k + 1);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(-z2) * sum;
}

// (1/2z) * sum_k (2k-1)!! / (2z^2)^k, truncated at the smallest term.
double dawson_asymptotic(double z) {
  const double inv = 1.0 / (2.0 * z * z);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2 * k - 1) * inv;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / (2.0 * z);
}

// Coefficients exactly as published, converted once.
constexpr double kNum1 = 33.0 / 232.0;
constexpr double kNum2 = 19.0 / 632.0;
constexpr double kNum3 = 23.0 / 1471.0;
constexpr double kDen1 = 517.0 / 646.0;
constexpr double kDen2 = 58.0 / 173.0;
constexpr double kDen3 = 11.0 / 262.0;
constexpr double kDen4 = 46.0 / 1471.0;

}  // namespace

double dawson_exact(double z) {
  require_nonnegative_finite(z, "dawson_exact");
  if (z == 0.0) return 0.0;
  return z <= kSeriesLimit ? dawson_series(z) : dawson_asymptotic(z);
}

double dawson_rational(double z) {
  require_nonnegative_finite(z, "dawson_rational");
  if (z <= 1.0) {
    const double s = z * z;
    const double num = 1.0 + s * (kNum1 + s * (kNum2 + s * kNum3));
    const double den = 1.0 + s * (kDen1 + s * (kDen2 + s * (kDen3 + s * kDen4)));
    return z * num / den;
  }
  // Same rational function in w = 1/z^2 so that large z cannot overflow.
  const double w = 1.0 / (z * z);
  const double num = kNum3 + w * (kNum2 + w * (kNum1 + w));
  const double den = kDen4 + w * (kDen3 + w * (kDen2 + w * (kDen1 + w)));
  return w * z * num / den;
}

double dawson(double z, DawsonMode mode) {
  return mode == DawsonMode::Exact ? dawson_exact(z) : dawson_rational(z);
}

DawsonGrid::DawsonGrid(double u_max, double step, DawsonMode mode)
    : u_max_(u_max), step_(step), mode_(mode) {
  if (!(std::isfinite(u_max) && u_max > 0.0 && std::isfinite(step) && step > 0.0)) {
    throw std::invalid_argument("DawsonGrid: u_max and step must be positive and finite");
  }
  const double ratio = u_max / step;
  const double intervals = std::round(ratio);
  if (intervals < 1.0 || std::abs(ratio - intervals) > 1e-9 * ratio) {
    throw std::invalid_argument("DawsonGrid: u_max / step must be an integer (got " +
                                std::to_string(ratio) + ")");
  }
  const auto n = static_cast<std::size_t>(intervals);
  values_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    values_[i] = dawson(u(i) / std::sqrt(2.0), mode);
  }
}

double DawsonGrid::u(std::size_t i) const {
  const auto n = values_.empty() ? std::size_t{1} : values_.size() - 1;
  if (i == n) return u_max_;
  return u_max_ * static_cast<double>(i) / static_cast<double>(n);
}

DawsonGrid build_dawson_grid(double u_max, double step, DawsonMode mode) {
  return DawsonGrid(u_max, step, mode);
}

}  // namespace horseshoe
