#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "horseshoe/dataset.hpp"
#include "horseshoe/lla_solver.hpp"
#include "horseshoe/tuning.hpp"

namespace horseshoe {

enum class Design { NormalMeans, Regression };
enum class Method { HsLla, Lasso };

std::string to_string(Design d);
std::string to_string(Method m);
Design parse_design(const std::string& s);
Method parse_method(const std::string& s);

/// Seed of replication `replication` in a run started from `seed`
/// (SplitMix64 finalizer over both words).
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t replication);

/// Mersenne twister keyed by (seed, stream) through std::seed_seq.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// n = 50, sigma^2 = 1, x = (3, 3, 0, ..., 0); y and y_out drawn independently.
Dataset generate_normal_means(std::uint64_t seed);

/// n = 50, p = 100, x = (3, 1.5, 2, 0, ..., 0). Rows of Phi are AR(1) with
/// cov(Phi_k, Phi_l) = 0.5^|k-l|; y and y_out share Phi and x.
Dataset generate_regression(std::uint64_t seed);

Dataset generate(Design design, std::uint64_t seed);

struct MetricsRow {
  std::string replication;  // index, or "mean" / "sd" for aggregates
  std::uint64_t seed = 0;
  Method method = Method::HsLla;
  double sse = 0.0;
  double psse = 0.0;  // NaN when the dataset has no y_out
  double tnr = 0.0;
  double tpr = 0.0;
  double tau_selected = 0.0;  // selected tau (hs-lla) or lambda (lasso)
  double iterations = 0.0;
  double time_s = 0.0;       // final fit
  double tune_time_s = 0.0;  // cross-validation
  bool converged = true;
};

/// SSE = sum (x_hat - x)^2, pSSE = ||y_out - Phi x_hat||^2, TNR / TPR from
/// exact zeros of x_hat. A rate whose denominator is empty is reported as 1.
MetricsRow evaluate(const Eigen::VectorXd& x_hat, const Dataset& data);

struct MetricsReport {
  Design design = Design::NormalMeans;
  std::vector<MetricsRow> rows;        // one per (replication, method)
  std::vector<MetricsRow> aggregates;  // mean then sd, per method
};

struct BenchmarkOptions {
  Design design = Design::NormalMeans;
  int replications = 50;
  std::vector<Method> methods{Method::HsLla, Method::Lasso};
  std::uint64_t seed = 20221128;
  int folds = 10;
  std::vector<double> tau_grid;  // empty: default_tau_grid()
  std::size_t lambda_count = 25;
  MeansCvScheme means_scheme = MeansCvScheme::DataFission;  // normal-means design only
  double fission_scale = 0.5;
  bool record_time = true;  // false writes zero timings (byte-stable output)
};

/// Fresh seeded data per replication, CV tuning per method, then the final
/// fit on all data. Replications run in index order; every reported number
/// except the timings is a function of the options alone.
MetricsReport run_benchmark(const BenchmarkOptions& options);

/// Column-wise mean and sample standard deviation per method.
std::vector<MetricsRow> aggregate(const std::vector<MetricsRow>& rows,
                                  const std::vector<Method>& methods);

/// replication,seed,method,sse,psse,tnr,tpr,tau_selected,iterations,time_s,tune_time_s,converged
void write_rows_csv(const MetricsReport& report, std::ostream& out);

/// Metric-by-method table with "mean (sd)" cells. The HS-MCMC, SCAD and
/// MCP columns are external baselines and stay empty.
void write_table_csv(const MetricsReport& report, std::ostream& out);

}  // namespace horseshoe
