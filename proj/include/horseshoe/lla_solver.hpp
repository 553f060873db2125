#pragma once

#include <Eigen/Dense>
#include <vector>

#include "horseshoe/horseshoe_density.hpp"

namespace horseshoe {

struct LlaConfig {
  double init_value = 1.0;  // uniform starting iterate x_(0)
  double tol = 1e-6;        // stop when sum_i (x_(k+1),i - x_(k),i)^2 < tol
  int max_iter = 500;
  double cd_tol = 1e-8;     // inner coordinate descent: max coordinate change
  int cd_max_sweeps = 10000;

  void validate() const;

  /// x_(0) = 1, the normal-means setting.
  static LlaConfig normal_means();
  /// x_(0) = 0.1, the regression setting.
  static LlaConfig regression();
};

/// Iterate x_(k) with the weights it induces, lambda_(k) = pen'(|x_(k)|).
struct LlaState {
  Eigen::VectorXd iterate;
  Eigen::VectorXd weights;
  int iteration = 0;
  double objective = 0.0;
};

struct SolveResult {
  Eigen::VectorXd x_hat;
  Eigen::VectorXd weights;  // pen' at x_hat
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // entry k is the objective at x_(k)
  std::vector<Eigen::Index> support;    // i with x_hat[i] != 0
  int inner_failures = 0;               // weighted-lasso solves that hit cd_max_sweeps
};

/// S(beta, gamma): shrink beta toward zero by gamma, exactly 0 when gamma >= |beta|.
/// Throws std::invalid_argument for negative gamma.
double soft_threshold(double beta, double gamma);

struct LassoResult {
  Eigen::VectorXd x;
  int sweeps = 0;
  bool converged = false;
};

/// Cyclic coordinate descent for
///   0.5 * ||y - Phi x||^2 + sum_i weights[i] * |x_i|,
/// x_i <- S(phi_i' (y - sum_{l != i} phi_l x_l), weights[i]) / ||phi_i||^2,
/// sweeping i = 0..p-1 until the largest coordinate change is below cd_tol.
LassoResult lasso_weighted(const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                           const Eigen::VectorXd& weights, const Eigen::VectorXd& warm_start,
                           double cd_tol, int cd_max_sweeps);

/// pen'(max(|x_i|, floor)) per coordinate.
Eigen::VectorXd lla_weights(const Eigen::VectorXd& x, const Horseshoe& prior);

/// 0.5 * ||y - x||^2 + sum_i pen(max(|x_i|, floor)).
double objective(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Horseshoe& prior);
/// 0.5 * ||y - Phi x||^2 + sum_i pen(max(|x_i|, floor)).
double objective(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                 const Horseshoe& prior);

/// State at x with fresh weights and objective.
LlaState make_lla_state(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Horseshoe& prior,
                        int iteration = 0);
LlaState make_lla_state(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::MatrixXd& phi, const Horseshoe& prior, int iteration = 0);

/// One LLA update in the normal-means model: x_i <- S(y_i, lambda_i).
Eigen::VectorXd lla_update(const LlaState& state, const Eigen::VectorXd& y);
/// One LLA update in regression: weighted lasso warm-started at the iterate.
LassoResult lla_update(const LlaState& state, const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                       const LlaConfig& config);

SolveResult lla_normal_means(const Eigen::VectorXd& y, const Horseshoe& prior,
                             const LlaConfig& config = LlaConfig::normal_means());

SolveResult lla_regression(const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                           const Horseshoe& prior,
                           const LlaConfig& config = LlaConfig::regression());

}  // namespace horseshoe
