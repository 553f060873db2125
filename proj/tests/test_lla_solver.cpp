#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "horseshoe/lla_solver.hpp"
#include "oracles.hpp"

using namespace horseshoe;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_matrix(Eigen::Index n, Eigen::Index p, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, scale);
  MatrixXd m(n, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = z(rng);
  return m;
}

VectorXd random_vector(Eigen::Index n, std::uint64_t seed, double scale = 1.0) {
  return random_matrix(n, 1, seed, scale).col(0);
}

}  // namespace

TEST_CASE("soft threshold") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(1.0, 1.0) == 0.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(2.0, 0.0) == 2.0);
  CHECK_THROWS_AS(soft_threshold(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("weighted lasso: zero weights give least squares") {
  const MatrixXd phi = random_matrix(30, 5, 11);
  const VectorXd y = random_vector(30, 12);
  const auto r = lasso_weighted(y, phi, VectorXd::Zero(5), VectorXd::Zero(5), 1e-14, 100000);
  CHECK(r.converged);
  const VectorXd ols = phi.colPivHouseholderQr().solve(y);
  CHECK((r.x - ols).norm() < 1e-10);
}

TEST_CASE("weighted lasso: orthonormal design is a soft threshold") {
  const MatrixXd q = random_matrix(20, 8, 21).householderQr().householderQ() * MatrixXd::Identity(20, 8);
  const VectorXd y = random_vector(20, 22, 2.0);
  const VectorXd w = random_vector(8, 23).cwiseAbs();
  const auto r = lasso_weighted(y, q, w, VectorXd::Zero(8), 1e-14, 100);
  const VectorXd z = q.transpose() * y;
  for (Eigen::Index i = 0; i < 8; ++i) CHECK(r.x[i] == doctest::Approx(soft_threshold(z[i], w[i])).epsilon(1e-12));
}

TEST_CASE("weighted lasso: KKT conditions") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const MatrixXd phi = random_matrix(15, 25, 100 + s);
    const VectorXd y = random_vector(15, 200 + s, 3.0);
    const VectorXd w = random_vector(25, 300 + s).cwiseAbs() * 2.0;
    const auto r = lasso_weighted(y, phi, w, VectorXd::Zero(25), 1e-13, 1000000);
    REQUIRE(r.converged);
    const VectorXd g = phi.transpose() * (y - phi * r.x);
    for (Eigen::Index i = 0; i < 25; ++i) {
      if (r.x[i] != 0.0) {
        CHECK(std::abs(g[i] - w[i] * (r.x[i] > 0 ? 1.0 : -1.0)) < 1e-8);
      } else {
        CHECK(std::abs(g[i]) <= w[i] + 1e-8);
      }
    }
  }
}

TEST_CASE("weighted lasso rejects bad input") {
  MatrixXd phi = random_matrix(5, 3, 1);
  phi.col(1).setZero();
  CHECK_THROWS_AS(lasso_weighted(VectorXd::Ones(5), phi, VectorXd::Ones(3), VectorXd::Zero(3), 1e-8, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(lasso_weighted(VectorXd::Ones(4), random_matrix(5, 3, 2), VectorXd::Ones(3),
                                 VectorXd::Zero(3), 1e-8, 10),
                  std::invalid_argument);
}

TEST_CASE("LLA normal means: zeros stay at zero") {
  const Horseshoe h(1.0);
  const auto r = lla_normal_means(VectorXd::Zero(10), h);
  CHECK(r.converged);
  CHECK(r.iterations <= 2);
  CHECK(r.x_hat.isZero(0.0));
  CHECK(r.support.empty());
}

TEST_CASE("LLA normal means: a large signal converges to the scalar fixed point") {
  const Horseshoe h(1.0);
  VectorXd y = VectorXd::Zero(5);
  y[0] = 10.0;
  const auto r = lla_normal_means(y, h);
  REQUIRE(r.converged);
  // Oracle: root of x = 10 - pen'(x) with pen' from the normal mixture.
  auto g = [](double x) { return x - 10.0 + oracle::penalty_derivative(x, 1.0); };
  boost::uintmax_t iters = 100;
  const auto root = boost::math::tools::toms748_solve(g, 9.0, 10.0, boost::math::tools::eps_tolerance<double>(50), iters);
  const double fixed = 0.5 * (root.first + root.second);
  CHECK(r.x_hat[0] == doctest::Approx(fixed).epsilon(1e-6));
  CHECK(10.0 - r.x_hat[0] < 0.5);
  CHECK(r.x_hat.tail(4).isZero(0.0));
  REQUIRE(r.support.size() == 1);
  CHECK(r.support[0] == 0);
}

TEST_CASE("LLA descent and fixed point, both designs") {
  const Horseshoe base(1.0);
  for (std::uint64_t s = 0; s < 6; ++s) {
    const Horseshoe h = base.with_tau(std::pow(10.0, -2.0 + 0.5 * static_cast<double>(s)));
    VectorXd y = random_vector(40, 500 + s);
    y.head(3).array() += 4.0;
    const auto r = lla_normal_means(y, h);
    CHECK(r.converged);
    for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
      CHECK(r.objective_trace[k] <= r.objective_trace[k - 1] + 1e-10 * std::abs(r.objective_trace[k - 1]));
    CHECK(r.objective_trace.back() == doctest::Approx(objective(r.x_hat, y, h)));
    const VectorXd next = lla_update(make_lla_state(r.x_hat, y, h), y);
    CHECK((next - r.x_hat).squaredNorm() < LlaConfig{}.tol);

    const MatrixXd phi = random_matrix(30, 45, 600 + s);
    VectorXd beta = VectorXd::Zero(45);
    beta.head(2) << 3.0, -2.0;
    const VectorXd yr = phi * beta + random_vector(30, 700 + s);
    const auto rr = lla_regression(yr, phi, h);
    CHECK(rr.converged);
    CHECK(rr.inner_failures == 0);
    for (std::size_t k = 1; k < rr.objective_trace.size(); ++k)
      CHECK(rr.objective_trace[k] <= rr.objective_trace[k - 1] + 1e-10 * std::abs(rr.objective_trace[k - 1]));
    const auto step = lla_update(make_lla_state(rr.x_hat, yr, phi, h), yr, phi, LlaConfig::regression());
    CHECK((step.x - rr.x_hat).squaredNorm() < LlaConfig{}.tol);
  }
}

TEST_CASE("LLA regression with p = 1 and a unit column reduces to normal means") {
  const Horseshoe h(0.5);
  const MatrixXd phi = MatrixXd::Ones(1, 1);
  for (double yv : {0.3, 2.0, -6.0}) {
    const VectorXd y = VectorXd::Constant(1, yv);
    LlaConfig cfg = LlaConfig::normal_means();
    const auto a = lla_normal_means(y, h, cfg);
    const auto b = lla_regression(y, phi, h, cfg);
    CHECK(b.x_hat[0] == doctest::Approx(a.x_hat[0]).epsilon(1e-10));
  }
}

TEST_CASE("weak penalty approaches least squares") {
  const MatrixXd phi = random_matrix(40, 4, 31, 2.0);
  const VectorXd y = phi * Eigen::Vector4d(1.0, -2.0, 0.5, 3.0) + random_vector(40, 32);
  const Horseshoe h(1e3);
  LlaConfig cfg = LlaConfig::regression();
  cfg.cd_tol = 1e-13;
  const auto r = lla_regression(y, phi, h, cfg);
  REQUIRE(r.converged);
  const VectorXd ols = phi.colPivHouseholderQr().solve(y);
  CHECK((r.x_hat - ols).cwiseAbs().maxCoeff() < 1e-2);
  // With full support the fixed point solves Phi'Phi x = Phi'y - w sign(x).
  REQUIRE(r.support.size() == 4);
  const VectorXd rhs = phi.transpose() * y - r.weights.cwiseProduct(r.x_hat.cwiseSign());
  const VectorXd shifted = (phi.transpose() * phi).ldlt().solve(rhs);
  // The weights lag the final iterate by one LLA step.
  CHECK((r.x_hat - shifted).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("non-convergence is reported") {
  LlaConfig cfg = LlaConfig::normal_means();
  cfg.max_iter = 1;
  VectorXd y = random_vector(20, 41, 3.0);
  const auto r = lla_normal_means(y, Horseshoe(0.1), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
  LlaConfig bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK(LlaConfig::regression().init_value == 0.1);
}
