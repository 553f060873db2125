#include "horseshoe/lla_solver.hpp"

#include <cmath>
#include <stdexcept>


namespace horseshoe {

namespace {

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw std::invalid_argument(std::string(what) + " contains non-finite values");
}

double penalty_sum(const Eigen::VectorXd& x, const Horseshoe& prior) {
  double total = 0.0;
  double at_zero = 0.0;
  bool have_zero = false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      if (!have_zero) {
        at_zero = prior.clamped_penalty(0.0);
        have_zero = true;
      }
      total += at_zero;
    } else {
      total += prior.clamped_penalty(x[i]);
    }
  }
  return total;
}

std::vector<Eigen::Index> support_of(const Eigen::VectorXd& x) {
  std::vector<Eigen::Index> s;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) s.push_back(i);
  }
  return s;
}

SolveResult finish(const LlaState& state, bool converged, std::vector<double> trace,
                   int inner_failures) {
  SolveResult r;
  r.x_hat = state.iterate;
  r.weights = state.weights;
  r.iterations = state.iteration;
  r.converged = converged;
  r.objective_trace = std::move(trace);
  r.support = support_of(state.iterate);
  r.inner_failures = inner_failures;
  return r;
}

}  // namespace

void LlaConfig::validate() const {
  if (!std::isfinite(init_value)) throw std::invalid_argument("LlaConfig: init_value must be finite");
  if (!(tol > 0.0)) throw std::invalid_argument("LlaConfig: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("LlaConfig: max_iter must be >= 1");
  if (!(cd_tol > 0.0)) throw std::invalid_argument("LlaConfig: cd_tol must be positive");
  if (cd_max_sweeps < 1) throw std::invalid_argument("LlaConfig: cd_max_sweeps must be >= 1");
}

LlaConfig LlaConfig::normal_means() { return LlaConfig{}; }

LlaConfig LlaConfig::regression() {
  LlaConfig c;
  c.init_value = 0.1;
  return c;
}

double soft_threshold(double beta, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("soft_threshold: gamma must be >= 0");
  if (gamma >= std::abs(beta)) return 0.0;
  return beta > 0.0 ? beta - gamma : beta + gamma;
}

LassoResult lasso_weighted(const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                           const Eigen::VectorXd& weights, const Eigen::VectorXd& warm_start,
                           double cd_tol, int cd_max_sweeps) {
  const Eigen::Index p = phi.cols();
  if (phi.rows() != y.size() || weights.size() != p || warm_start.size() != p) {
    throw std::invalid_argument("lasso_weighted: inconsistent dimensions");
  }
  if ((weights.array() < 0.0).any() || !weights.allFinite()) {
    throw std::invalid_argument("lasso_weighted: weights must be finite and >= 0");
  }
  const Eigen::VectorXd norms = phi.colwise().squaredNorm().transpose();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!(norms[i] > 0.0)) {
      throw std::invalid_argument("lasso_weighted: column " + std::to_string(i) + " has zero norm");
    }
  }

  LassoResult out;
  out.x = warm_start;
  Eigen::VectorXd residual = y - phi * out.x;
  for (int sweep = 1; sweep <= cd_max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) {
      const double old = out.x[i];
      const double score = phi.col(i).dot(residual) + norms[i] * old;
      const double updated = soft_threshold(score, weights[i]) / norms[i];
      if (updated != old) {
        residual.noalias() -= (updated - old) * phi.col(i);
        out.x[i] = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    out.sweeps = sweep;
    if (max_change < cd_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

Eigen::VectorXd lla_weights(const Eigen::VectorXd& x, const Horseshoe& prior) {
  Eigen::VectorXd w(x.size());
  double at_zero = -1.0;  // pen'(floor), shared by every exact zero
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      if (at_zero < 0.0) at_zero = prior.weight(0.0);
      w[i] = at_zero;
    } else {
      w[i] = prior.weight(x[i]);
    }
  }
  return w;
}

double objective(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Horseshoe& prior) {
  return 0.5 * (y - x).squaredNorm() + penalty_sum(x, prior);
}

double objective(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                 const Horseshoe& prior) {
  return 0.5 * (y - phi * x).squaredNorm() + penalty_sum(x, prior);
}

LlaState make_lla_state(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Horseshoe& prior,
                        int iteration) {
  return LlaState{x, lla_weights(x, prior), iteration, objective(x, y, prior)};
}

LlaState make_lla_state(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::MatrixXd& phi, const Horseshoe& prior, int iteration) {
  return LlaState{x, lla_weights(x, prior), iteration, objective(x, y, phi, prior)};
}

Eigen::VectorXd lla_update(const LlaState& state, const Eigen::VectorXd& y) {
  Eigen::VectorXd next(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) next[i] = soft_threshold(y[i], state.weights[i]);
  return next;
}

LassoResult lla_update(const LlaState& state, const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                       const LlaConfig& config) {
  return lasso_weighted(y, phi, state.weights, state.iterate, config.cd_tol, config.cd_max_sweeps);
}

SolveResult lla_normal_means(const Eigen::VectorXd& y, const Horseshoe& prior,
                             const LlaConfig& config) {
  config.validate();
  require_finite(y, "lla_normal_means: y");
  LlaState state =
      make_lla_state(Eigen::VectorXd::Constant(y.size(), config.init_value), y, prior);
  std::vector<double> trace{state.objective};
  while (state.iteration < config.max_iter) {
    const Eigen::VectorXd next = lla_update(state, y);
    const double change = (next - state.iterate).squaredNorm();
    state = make_lla_state(next, y, prior, state.iteration + 1);
    trace.push_back(state.objective);
    if (change < config.tol) return finish(state, true, std::move(trace), 0);
  }
  return finish(state, false, std::move(trace), 0);
}

SolveResult lla_regression(const Eigen::VectorXd& y, const Eigen::MatrixXd& phi,
                           const Horseshoe& prior, const LlaConfig& config) {
  config.validate();
  require_finite(y, "lla_regression: y");
  if (phi.rows() != y.size()) throw std::invalid_argument("lla_regression: Phi rows != length of y");
  LlaState state =
      make_lla_state(Eigen::VectorXd::Constant(phi.cols(), config.init_value), y, phi, prior);
  std::vector<double> trace{state.objective};
  int inner_failures = 0;
  while (state.iteration < config.max_iter) {
    const LassoResult inner = lla_update(state, y, phi, config);
    if (!inner.converged) ++inner_failures;
    const double change = (inner.x - state.iterate).squaredNorm();
    state = make_lla_state(inner.x, y, phi, prior, state.iteration + 1);
    trace.push_back(state.objective);
    if (change < config.tol) return finish(state, true, std::move(trace), inner_failures);
  }
  return finish(state, false, std::move(trace), inner_failures);
}

}  // namespace horseshoe
