#pragma once

#include <Eigen/Dense>
#include <optional>

namespace horseshoe {

/// Observations y = Phi x + eps. A missing design means Phi = I (normal means).
struct Dataset {
  Eigen::VectorXd y;
  std::optional<Eigen::MatrixXd> phi;
  Eigen::VectorXd x_true;  // empty when the truth is unknown
  double sigma2 = 1.0;
  std::optional<Eigen::VectorXd> y_out;  // independent draw with the same truth and design

  bool is_normal_means() const { return !phi.has_value(); }
  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return phi ? phi->cols() : y.size(); }

  /// Throws std::invalid_argument on inconsistent dimensions.
  void validate() const;
};

}  // namespace horseshoe
