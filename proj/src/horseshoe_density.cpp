#include "horseshoe/horseshoe_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace horseshoe {

namespace {

std::shared_ptr<const LaplaceMixtureQuadrature> default_table() {
  static const auto table = std::make_shared<const LaplaceMixtureQuadrature>(QuadratureSpec{});
  return table;
}

void check_tau(double tau) {
  if (!(std::isfinite(tau) && tau > 0.0)) {
    throw std::invalid_argument("horseshoe: tau must be positive and finite, got " +
                                std::to_string(tau));
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

void check_equispaced_positive(std::span<const double> x) {
  if (x.size() < 2) return;
  const double step = x[1] - x[0];
  if (!(step > 0.0) || !(x.front() > 0.0)) {
    throw std::invalid_argument("monotonicity_report: grid must be strictly positive and increasing");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs((x[i] - x[i - 1]) - step) > 1e-6 * step) {
      throw std::invalid_argument("monotonicity_report: grid must be equispaced");
    }
  }
}

}  // namespace

void HorseshoeParams::validate() const {
  check_tau(tau);
  quad.validate();
}

Horseshoe::Horseshoe(double tau) : Horseshoe(HorseshoeParams{tau, QuadratureSpec{}}, default_table()) {}

Horseshoe::Horseshoe(HorseshoeParams params)
    : params_(params), laplace_(std::make_shared<const LaplaceMixtureQuadrature>(params.quad)) {
  params_.validate();
}

Horseshoe::Horseshoe(HorseshoeParams params, std::shared_ptr<const LaplaceMixtureQuadrature> table)
    : params_(params), laplace_(std::move(table)) {
  params_.validate();
}

Horseshoe Horseshoe::with_tau(double tau) const {
  HorseshoeParams p = params_;
  p.tau = tau;
  return Horseshoe(p, laplace_);
}

double Horseshoe::scaled_abs(double x, const char* who) const {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": non-finite argument");
  }
  const double ax = std::abs(x);
  if (ax < floor()) {
    throw BelowFloorError(std::string(who) + ": |x| = " + std::to_string(ax) +
                          " is below the floor x_floor * tau = " + std::to_string(floor()) +
                          " (the density diverges at 0)");
  }
  return ax / params_.tau;
}

double Horseshoe::log_density_laplace_mixture(double x) const {
  const double a = scaled_abs(x, "density_laplace_mixture");
  const double log_const = std::log(2.0) - 1.5 * std::log(std::numbers::pi) - std::log(params_.tau);
  return log_const + laplace_->moments(a).log_i0;
}

double Horseshoe::density_laplace_mixture(double x) const {
  return std::exp(log_density_laplace_mixture(x));
}

double Horseshoe::log_density_normal_mixture(double x) const {
  const double a = scaled_abs(x, "density_normal_mixture");
  return std::log(normal_mixture_integral(a, params_.quad)) - std::log(params_.tau);
}

double Horseshoe::density_normal_mixture(double x) const {
  return std::exp(log_density_normal_mixture(x));
}

double Horseshoe::penalty(double x) const { return -log_density_laplace_mixture(x); }

double Horseshoe::penalty_derivative(double x_abs) const {
  const double a = scaled_abs(x_abs, "penalty_derivative");
  return laplace_->moments(a).mean / params_.tau;
}

double Horseshoe::penalty_second_derivative(double x_abs) const {
  const double a = scaled_abs(x_abs, "penalty_second_derivative");
  const LaplaceMoments m = laplace_->moments(a);
  const double variance = std::max(m.second - m.mean * m.mean, 0.0);
  return -variance / (params_.tau * params_.tau);
}

double Horseshoe::clamped_penalty(double x) const {
  return penalty(std::max(std::abs(x), floor()));
}

double Horseshoe::weight(double x) const {
  return penalty_derivative(std::max(std::abs(x), floor()));
}

double validate_representation(std::span<const double> x_grid, const Horseshoe& prior) {
  double worst = 0.0;
  for (double x : x_grid) {
    const double diff =
        std::abs(prior.log_density_laplace_mixture(x) - prior.log_density_normal_mixture(x));
    worst = std::max(worst, diff);
  }
  return worst;
}

bool MonotonicityReport::all_pass() const {
  return std::all_of(orders.begin(), orders.end(), [](const OrderCheck& c) { return c.pass; });
}

MonotonicityReport alternating_sign_report(std::span<const double> values, int order_max,
                                           double slack) {
  MonotonicityReport report;
  report.slack = slack;
  for (int k = 0; k <= order_max; ++k) {
    OrderCheck check;
    check.order = k;
    check.worst = std::numeric_limits<double>::infinity();
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) < values.size(); ++i) {
      double diff = 0.0;
      double mass = 0.0;
      for (int j = 0; j <= k; ++j) {
        const double c = binomial(k, j) * (((k - j) % 2 == 0) ? 1.0 : -1.0);
        diff += c * values[i + j];
        mass += std::abs(c * values[i + j]);
      }
      const double normalized = mass > 0.0 ? sign * diff / mass : 0.0;
      check.worst = std::min(check.worst, normalized);
      ++check.checked;
      if (normalized < -slack) ++check.violations;
    }
    check.pass = check.violations == 0;
    report.orders.push_back(check);
  }
  return report;
}

MonotonicityReport monotonicity_report(int order_max, std::span<const double> x_grid,
                                       const Horseshoe& prior, MonotoneTarget target,
                                       double slack) {
  if (order_max < 0 || order_max > 4) {
    throw std::invalid_argument("monotonicity_report: order_max must be in [0, 4]");
  }
  if (x_grid.size() < static_cast<std::size_t>(order_max) + 2) {
    throw std::invalid_argument("monotonicity_report: grid too short for the requested order");
  }
  check_equispaced_positive(x_grid);
  std::vector<double> values(x_grid.size());
  std::transform(x_grid.begin(), x_grid.end(), values.begin(), [&](double x) {
    return target == MonotoneTarget::Density ? prior.density_laplace_mixture(x)
                                             : prior.penalty_derivative(x);
  });
  MonotonicityReport report = alternating_sign_report(values, order_max, slack);
  report.step = x_grid[1] - x_grid[0];
  return report;
}

double max_penalty_second_difference(std::span<const double> x_grid, const Horseshoe& prior) {
  if (x_grid.size() < 3) {
    throw std::invalid_argument("max_penalty_second_difference: need at least 3 points");
  }
  check_equispaced_positive(x_grid);
  double worst = -std::numeric_limits<double>::infinity();
  double prev2 = prior.penalty(x_grid[0]);
  double prev1 = prior.penalty(x_grid[1]);
  for (std::size_t i = 2; i < x_grid.size(); ++i) {
    const double cur = prior.penalty(x_grid[i]);
    worst = std::max(worst, cur - 2.0 * prev1 + prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return worst;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (i + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

std::vector<double> representation_grid(double half_width, std::size_t points, double window) {
  std::vector<double> out;
  for (double x : linspace(-half_width, half_width, points)) {
    // Tolerate rounding in the grid so that +-window itself is kept.
    if (std::abs(x) >= window * (1.0 - 1e-12)) out.push_back(x);
  }
  return out;
}

}  // namespace horseshoe
