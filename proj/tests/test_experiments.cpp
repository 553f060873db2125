#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "horseshoe/experiments.hpp"

using namespace horseshoe;

TEST_CASE("seeding") {
  CHECK(replication_seed(1, 0) != replication_seed(1, 1));
  CHECK(replication_seed(1, 0) != replication_seed(2, 0));
  CHECK(replication_seed(9, 4) == replication_seed(9, 4));
  auto a = make_stream(5, 0), b = make_stream(5, 0), c = make_stream(5, 1);
  CHECK(a() == b());
  CHECK(a() != c());
}

TEST_CASE("normal means generator") {
  const Dataset d = generate_normal_means(17);
  CHECK(d.n() == 50);
  CHECK(d.is_normal_means());
  CHECK(d.x_true[0] == 3.0);
  CHECK(d.x_true[1] == 3.0);
  CHECK(d.x_true.tail(48).isZero(0.0));
  REQUIRE(d.y_out);
  CHECK(*d.y_out != d.y);
  CHECK(generate_normal_means(17).y == d.y);
  // Noise mean and variance over many draws.
  double sum = 0.0, sq = 0.0;
  int count = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Dataset e = generate_normal_means(s);
    const Eigen::VectorXd noise = e.y - e.x_true;
    sum += noise.sum();
    sq += noise.squaredNorm();
    count += static_cast<int>(noise.size());
  }
  CHECK(std::abs(sum / count) < 0.02);
  CHECK(sq / count == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("regression generator") {
  const Dataset d = generate_regression(3);
  REQUIRE(d.phi);
  CHECK(d.phi->rows() == 50);
  CHECK(d.phi->cols() == 100);
  CHECK(d.x_true.head(3) == Eigen::Vector3d(3.0, 1.5, 2.0));
  CHECK(d.x_true.tail(97).isZero(0.0));
  double c01 = 0.0, c02 = 0.0, v = 0.0;
  int rows = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Eigen::MatrixXd phi = *generate_regression(s).phi;
    for (Eigen::Index r = 0; r < phi.rows(); ++r) {
      c01 += phi(r, 10) * phi(r, 11);
      c02 += phi(r, 10) * phi(r, 12);
      v += phi(r, 10) * phi(r, 10);
      ++rows;
    }
  }
  CHECK(c01 / rows == doctest::Approx(0.5).epsilon(0.06));
  CHECK(c02 / rows == doctest::Approx(0.25).epsilon(0.12));
  CHECK(v / rows == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("evaluate") {
  Dataset d = generate_normal_means(1);
  Eigen::VectorXd x = d.x_true;
  auto m = evaluate(x, d);
  CHECK(m.sse == 0.0);
  CHECK(m.tnr == 1.0);
  CHECK(m.tpr == 1.0);
  x[0] = 0.0;
  x[5] = 1.0;
  m = evaluate(x, d);
  CHECK(m.sse == doctest::Approx(10.0));
  CHECK(m.tpr == 0.5);
  CHECK(m.tnr == doctest::Approx(47.0 / 48.0));
  CHECK(m.psse == doctest::Approx((*d.y_out - x).squaredNorm()));
}

TEST_CASE("parsing") {
  CHECK(parse_design("normal-means") == Design::NormalMeans);
  CHECK(parse_design("regression") == Design::Regression);
  CHECK(parse_method("lasso") == Method::Lasso);
  CHECK_THROWS_AS(parse_design("ridge"), std::invalid_argument);
}

TEST_CASE("benchmark: small run, aggregates and determinism") {
  BenchmarkOptions o;
  o.replications = 2;
  o.record_time = false;
  const auto a = run_benchmark(o);
  CHECK(a.rows.size() == 4);
  CHECK(a.aggregates.size() == 4);
  std::ostringstream ra, rb;
  write_rows_csv(a, ra);
  write_rows_csv(run_benchmark(o), rb);
  CHECK(ra.str() == rb.str());
  const auto& mean = a.aggregates[0];
  CHECK(mean.replication == "mean");
  CHECK(mean.sse == doctest::Approx(0.5 * (a.rows[0].sse + a.rows[2].sse)));
  std::ostringstream t;
  write_table_csv(a, t);
  CHECK(t.str().rfind("metric,HS-LLA,HS-MCMC,SCAD,MCP,lasso\n", 0) == 0);

  o.replications = 1;
  const auto one = run_benchmark(o);
  CHECK(one.rows.size() == 2);
  CHECK(one.aggregates[1].sse == 0.0);  // sd of a single replication
}
