#include "horseshoe/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>

namespace horseshoe {

namespace {

struct FoldSplit {
  Eigen::VectorXd y_train, y_hold;
  Eigen::MatrixXd phi_train, phi_hold;
};

FoldSplit split_rows(const Dataset& data, const std::vector<Eigen::Index>& hold) {
  const Eigen::Index n = data.n();
  std::vector<char> is_hold(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i : hold) is_hold[static_cast<std::size_t>(i)] = 1;
  std::vector<Eigen::Index> train;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!is_hold[static_cast<std::size_t>(i)]) train.push_back(i);
  }
  FoldSplit s;
  s.y_train = data.y(train);
  s.y_hold = data.y(hold);
  s.phi_train = (*data.phi)(train, Eigen::all);
  s.phi_hold = (*data.phi)(hold, Eigen::all);
  return s;
}

constexpr std::uint64_t kFissionStreamBase = 0x5eed;

// Seeded N(0, sigma^2) draws for fission split r.
Eigen::VectorXd fission_noise(const CvPlan& plan, int split, Eigen::Index n, double sigma2) {
  std::mt19937_64 rng(plan.seed ^ (kFissionStreamBase + static_cast<std::uint64_t>(split) * 0x9e3779b97f4a7c15ULL));
  boost::random::normal_distribution<double> normal(0.0, std::sqrt(sigma2));
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w[i] = normal(rng);
  return w;
}

struct FissionSplit {
  Eigen::VectorXd train, test;
};

std::vector<FissionSplit> fission_splits(const Dataset& data, const CvPlan& plan) {
  std::vector<FissionSplit> out;
  const double c = plan.fission_scale;
  for (int r = 0; r < plan.k; ++r) {
    const Eigen::VectorXd w = fission_noise(plan, r, data.n(), data.sigma2);
    out.push_back({data.y + c * w, data.y - w / c});
  }
  return out;
}

std::size_t argmin_first(const std::vector<double>& curve) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i] < curve[best]) best = i;
  }
  return best;
}

CvResult finish(std::vector<double> grid, std::vector<double> curve) {
  CvResult r;
  r.best = grid[argmin_first(curve)];
  r.grid = std::move(grid);
  r.curve = std::move(curve);
  return r;
}

void require_sorted_positive(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw std::invalid_argument(std::string(what) + ": grid must be positive and strictly increasing");
    }
  }
}

}  // namespace

void CvPlan::validate(Eigen::Index n) const {
  if (k < 2) throw std::invalid_argument("CvPlan: k must be >= 2");
  if (n < k) throw std::invalid_argument("CvPlan: fewer observations than folds");
  if (static_cast<int>(folds.size()) != k) throw std::invalid_argument("CvPlan: fold count != k");
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (const auto& f : folds) {
    if (f.empty()) throw std::invalid_argument("CvPlan: empty fold");
    for (Eigen::Index i : f) {
      if (i < 0 || i >= n) throw std::invalid_argument("CvPlan: fold index out of range");
      ++seen[static_cast<std::size_t>(i)];
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw std::invalid_argument("CvPlan: folds do not partition the observations");
  }
  require_sorted_positive(tau_grid, "CvPlan");
  if (!(fission_scale > 0.0 && std::isfinite(fission_scale))) {
    throw std::invalid_argument("CvPlan: fission_scale must be positive");
  }
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi >= lo) || count == 0) {
    throw std::invalid_argument("log_grid: need 0 < lo <= hi and count >= 1");
  }
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  g.back() = hi;
  return g;
}

std::vector<double> default_tau_grid() { return log_grid(1e-3, std::pow(10.0, 0.5), 25); }

CvPlan make_cv_plan(Eigen::Index n, int k, std::vector<double> tau_grid, std::uint64_t seed) {
  if (k < 2 || n < k) throw std::invalid_argument("make_cv_plan: need n >= k >= 2");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::mt19937_64 rng(seed);
  // Fisher-Yates with an explicit modulus draw so the permutation does not
  // depend on the standard library's shuffle implementation.
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }
  CvPlan plan;
  plan.k = k;
  plan.tau_grid = std::move(tau_grid);
  plan.seed = seed;
  plan.folds.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < order.size(); ++i) plan.folds[i % static_cast<std::size_t>(k)].push_back(order[i]);
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  plan.validate(n);
  return plan;
}

CvResult cross_validate_tau(const Dataset& data, const CvPlan& plan, const LlaConfig& config,
                            const Horseshoe& prior) {
  data.validate();
  plan.validate(data.n());
  std::vector<double> curve(plan.tau_grid.size(), 0.0);
  const double n = static_cast<double>(data.n());

  const bool fission = data.is_normal_means() && plan.means_scheme == MeansCvScheme::DataFission;
  const std::vector<FissionSplit> splits = fission ? fission_splits(data, plan) : std::vector<FissionSplit>{};

  for (std::size_t t = 0; t < plan.tau_grid.size(); ++t) {
    const Horseshoe model = prior.with_tau(plan.tau_grid[t]);
    double total = 0.0;
    if (fission) {
      for (const FissionSplit& split : splits) {
        total += (split.test - lla_normal_means(split.train, model, config).x_hat).squaredNorm();
      }
      curve[t] = total / (n * plan.k);
      continue;
    }
    for (const auto& hold : plan.folds) {
      if (data.is_normal_means()) {
        const Eigen::VectorXd y_hold = data.y(hold);
        const SolveResult fit = lla_normal_means(y_hold, model, config);
        for (Eigen::Index i = 0; i < y_hold.size(); ++i) {
          const double xi = fit.x_hat[i];
          double slope = 0.0;
          if (xi != 0.0) {
            const double curvature = model.penalty_second_derivative(std::max(std::abs(xi), model.floor()));
            slope = 1.0 / std::max(1.0 + curvature, 0.01);
          }
          const double r = xi - y_hold[i];
          total += r * r + 2.0 * data.sigma2 * slope - data.sigma2;
        }
      } else {
        const FoldSplit s = split_rows(data, hold);
        const SolveResult fit = lla_regression(s.y_train, s.phi_train, model, config);
        total += (s.y_hold - s.phi_hold * fit.x_hat).squaredNorm();
      }
    }
    curve[t] = total / n;
  }
  return finish(plan.tau_grid, std::move(curve));
}

std::vector<double> lasso_lambda_grid(const Dataset& data, std::size_t count) {
  const double top = data.is_normal_means() ? data.y.cwiseAbs().maxCoeff()
                                            : (data.phi->transpose() * data.y).cwiseAbs().maxCoeff();
  if (!(top > 0.0)) throw std::invalid_argument("lasso_lambda_grid: response is identically zero");
  return log_grid(1e-3 * top, top, count);
}

CvResult cross_validate_lasso(const Dataset& data, const CvPlan& plan,
                              const std::vector<double>& lambda_grid, const LlaConfig& config) {
  data.validate();
  plan.validate(data.n());
  require_sorted_positive(lambda_grid, "cross_validate_lasso");
  std::vector<double> curve(lambda_grid.size(), 0.0);
  const double n = static_cast<double>(data.n());

  if (data.is_normal_means() && plan.means_scheme == MeansCvScheme::DataFission) {
    for (const FissionSplit& split : fission_splits(data, plan)) {
      for (std::size_t l = 0; l < lambda_grid.size(); ++l) {
        const double lam = lambda_grid[l];
        curve[l] += (split.test - split.train.unaryExpr([lam](double v) { return soft_threshold(v, lam); }))
                        .squaredNorm();
      }
    }
    for (double& c : curve) c /= n * plan.k;
    return finish(lambda_grid, std::move(curve));
  }

  for (const auto& hold : plan.folds) {
    if (data.is_normal_means()) {
      for (Eigen::Index i : hold) {
        const double yi = data.y[i];
        for (std::size_t l = 0; l < lambda_grid.size(); ++l) {
          const double lam = lambda_grid[l];
          const double shrink = std::min(yi * yi, lam * lam);
          const double slope = std::abs(yi) > lam ? 1.0 : 0.0;
          curve[l] += shrink + 2.0 * data.sigma2 * slope - data.sigma2;
        }
      }
      continue;
    }
    const FoldSplit s = split_rows(data, hold);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(s.phi_train.cols());
    // Descending path with warm starts.
    for (std::size_t l = lambda_grid.size(); l-- > 0;) {
      const Eigen::VectorXd w = Eigen::VectorXd::Constant(x.size(), lambda_grid[l]);
      x = lasso_weighted(s.y_train, s.phi_train, w, x, config.cd_tol, config.cd_max_sweeps).x;
      curve[l] += (s.y_hold - s.phi_hold * x).squaredNorm();
    }
  }
  for (double& c : curve) c /= n;
  return finish(lambda_grid, std::move(curve));
}

}  // namespace horseshoe
