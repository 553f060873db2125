#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "horseshoe/dataset.hpp"
#include "horseshoe/horseshoe_density.hpp"
#include "horseshoe/lla_solver.hpp"

namespace horseshoe {

/// Held-out scoring in the normal-means model, where each mean has a single
/// observation and row folds leave the held-out means unidentified.
enum class MeansCvScheme {
  /// k independent Gaussian fission splits: with w ~ N(0, sigma^2 I) drawn
  /// from the plan seed, fit on y + c w and score against y - w / c. The two
  /// halves are independent; the folds are not used.
  DataFission,
  /// Stein's unbiased risk estimate on each held-out fold (ignores the jump
  /// of the estimator at its threshold, so it favours weak shrinkage).
  Sure,
};

/// k-fold split of {0..n-1} plus the tau grid it is used with.
struct CvPlan {
  int k = 10;
  std::vector<double> tau_grid;
  std::uint64_t seed = 0;
  std::vector<std::vector<Eigen::Index>> folds;  // each sorted ascending
  MeansCvScheme means_scheme = MeansCvScheme::DataFission;
  double fission_scale = 0.5;  // c

  void validate(Eigen::Index n) const;
};

/// 25 log-spaced values on [1e-3, 10^0.5].
std::vector<double> default_tau_grid();

/// `count` log-spaced values on [lo, hi], ascending.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Random fold assignment seeded by `seed`; fold sizes differ by at most one.
CvPlan make_cv_plan(Eigen::Index n, int k, std::vector<double> tau_grid, std::uint64_t seed);

struct CvResult {
  double best = 0.0;           // selected tau (or lambda for the lasso)
  std::vector<double> grid;    // candidates, ascending
  std::vector<double> curve;   // held-out score per candidate
};

/// Cross-validated tau for the horseshoe LLA estimator.
///
/// Regression: folds over rows; each (fold, tau) pair fits lla_regression on
/// the training rows and scores ||y_hold - Phi_hold x_hat||^2.
///
/// Normal means: see MeansCvScheme. Under Sure the held-out coordinate i
/// scores (x_hat_i - y_i)^2 + 2 sigma^2 dx_hat_i/dy_i - sigma^2, where
/// dx_hat/dy is 0 at exact zeros and 1 / (1 + pen''(|x_hat|)) at a nonzero
/// fixed point (denominator floored at 0.01).
///
/// The curve is the summed held-out score divided by n (and by k for
/// fission). Ties go to the smaller tau.
/// `prior` supplies the quadrature; its tau is ignored.
CvResult cross_validate_tau(const Dataset& data, const CvPlan& plan, const LlaConfig& config,
                            const Horseshoe& prior);

/// Lasso penalty grid: `count` log-spaced values from max_i |phi_i' y| down
/// to 1e-3 of that.
std::vector<double> lasso_lambda_grid(const Dataset& data, std::size_t count = 25);

/// Cross-validated uniform-weight lasso penalty using the plan's folds
/// (its tau grid is ignored) and the same scoring rules as cross_validate_tau.
CvResult cross_validate_lasso(const Dataset& data, const CvPlan& plan,
                              const std::vector<double>& lambda_grid, const LlaConfig& config);

}  // namespace horseshoe
