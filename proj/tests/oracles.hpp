#pragma once

// Reference values computed without the library's quadrature tables.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

namespace oracle {

// exp(-z^2) int_0^z exp(t^2) dt with the integrand kept in [0, 1].
inline double dawson(double z) {
  if (z == 0.0) return 0.0;
  auto f = [z](double t) { return std::exp((t - z) * (t + z)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, z, 12, 1e-14);
}

// Horseshoe marginal from the half-Cauchy normal scale mixture,
// p(x) = int_0^inf N(x; 0, lambda^2 tau^2) 2 / (pi (1 + lambda^2)) dlambda.
inline double horseshoe_density(double x, double tau) {
  const double pi = boost::math::constants::pi<double>();
  auto f = [&](double lambda) {
    const double s = lambda * tau;
    return std::exp(-0.5 * x * x / (s * s) - std::log(s)) / std::sqrt(2.0 * pi) * 2.0 /
           (pi * (1.0 + lambda * lambda));
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  // Split at the scale where the Gaussian factor switches on.
  const double knee = std::abs(x) / tau;
  return ts.integrate(f, 0.0, knee, 1e-15) + es.integrate(f, knee, std::numeric_limits<double>::infinity(), 1e-15);
}

// d/dx of the normal scale mixture, differentiated under the integral.
inline double horseshoe_density_derivative(double x, double tau) {
  const double pi = boost::math::constants::pi<double>();
  auto f = [&](double lambda) {
    const double s = lambda * tau;
    return -x * std::exp(-0.5 * x * x / (s * s) - 3.0 * std::log(s)) / std::sqrt(2.0 * pi) * 2.0 /
           (pi * (1.0 + lambda * lambda));
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double knee = std::abs(x) / tau;
  return ts.integrate(f, 0.0, knee, 1e-15) + es.integrate(f, knee, std::numeric_limits<double>::infinity(), 1e-15);
}

// pen'(x) = -p'(x) / p(x).
inline double penalty_derivative(double x, double tau) {
  return -horseshoe_density_derivative(x, tau) / horseshoe_density(x, tau);
}

// Classical bounds K/2 log(1 + 4/a^2) < p(x) tau < K log(1 + 2/a^2), a = |x|/tau.
inline double density_lower_bound(double x, double tau) {
  const double k = 1.0 / std::sqrt(2.0 * std::pow(boost::math::constants::pi<double>(), 3));
  const double a = std::abs(x) / tau;
  return 0.5 * k * std::log1p(4.0 / (a * a)) / tau;
}
inline double density_upper_bound(double x, double tau) {
  const double k = 1.0 / std::sqrt(2.0 * std::pow(boost::math::constants::pi<double>(), 3));
  const double a = std::abs(x) / tau;
  return k * std::log1p(2.0 / (a * a)) / tau;
}

}  // namespace oracle
