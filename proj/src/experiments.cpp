#include "horseshoe/experiments.hpp"

#include <boost/random/normal_distribution.hpp>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "horseshoe/csv.hpp"
#include "horseshoe/tuning.hpp"

namespace horseshoe {

namespace {

constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kFoldStream = 1;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, Eigen::Index n) {
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(Design d) { return d == Design::NormalMeans ? "normal-means" : "regression"; }
std::string to_string(Method m) { return m == Method::HsLla ? "hs-lla" : "lasso"; }

Design parse_design(const std::string& s) {
  if (s == "normal-means" || s == "means") return Design::NormalMeans;
  if (s == "regression") return Design::Regression;
  throw std::invalid_argument("unknown design '" + s + "' (expected normal-means or regression)");
}

Method parse_method(const std::string& s) {
  if (s == "hs-lla") return Method::HsLla;
  if (s == "lasso") return Method::Lasso;
  throw std::invalid_argument("unknown method '" + s + "' (expected hs-lla or lasso)");
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t replication) {
  return splitmix64(splitmix64(seed) ^ replication);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

Dataset generate_normal_means(std::uint64_t seed) {
  constexpr Eigen::Index n = 50;
  auto rng = make_stream(seed, kDataStream);
  Dataset d;
  d.x_true = Eigen::VectorXd::Zero(n);
  d.x_true[0] = 3.0;
  d.x_true[1] = 3.0;
  d.sigma2 = 1.0;
  d.y = d.x_true + gaussian_vector(rng, n);
  d.y_out = d.x_true + gaussian_vector(rng, n);
  return d;
}

Dataset generate_regression(std::uint64_t seed) {
  constexpr Eigen::Index n = 50, p = 100;
  constexpr double rho = 0.5;
  auto rng = make_stream(seed, kDataStream);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd phi(n, p);
  const double innovation = std::sqrt(1.0 - rho * rho);
  for (Eigen::Index j = 0; j < n; ++j) {
    phi(j, 0) = normal(rng);
    for (Eigen::Index k = 1; k < p; ++k) phi(j, k) = rho * phi(j, k - 1) + innovation * normal(rng);
  }
  Dataset d;
  d.x_true = Eigen::VectorXd::Zero(p);
  d.x_true[0] = 3.0;
  d.x_true[1] = 1.5;
  d.x_true[2] = 2.0;
  d.sigma2 = 1.0;
  const Eigen::VectorXd mean = phi * d.x_true;
  d.y = mean + gaussian_vector(rng, n);
  d.y_out = mean + gaussian_vector(rng, n);
  d.phi = std::move(phi);
  return d;
}

Dataset generate(Design design, std::uint64_t seed) {
  return design == Design::NormalMeans ? generate_normal_means(seed) : generate_regression(seed);
}

void Dataset::validate() const {
  if (y.size() == 0) throw std::invalid_argument("Dataset: empty response");
  if (!y.allFinite()) throw std::invalid_argument("Dataset: response contains non-finite values");
  if (phi && phi->rows() != y.size()) {
    throw std::invalid_argument("Dataset: design rows do not match response length");
  }
  if (x_true.size() != 0 && x_true.size() != p()) {
    throw std::invalid_argument("Dataset: x_true length does not match the number of coefficients");
  }
  if (y_out && y_out->size() != y.size()) {
    throw std::invalid_argument("Dataset: y_out length does not match y");
  }
  if (!(sigma2 > 0.0)) throw std::invalid_argument("Dataset: sigma2 must be positive");
}

MetricsRow evaluate(const Eigen::VectorXd& x_hat, const Dataset& data) {
  data.validate();
  if (x_hat.size() != data.p() || data.x_true.size() != data.p()) {
    throw std::invalid_argument("evaluate: x_hat and x_true must both have one entry per coefficient");
  }
  MetricsRow row;
  row.sse = (x_hat - data.x_true).squaredNorm();
  if (data.y_out) {
    const Eigen::VectorXd fitted = data.phi ? Eigen::VectorXd(*data.phi * x_hat) : x_hat;
    row.psse = (*data.y_out - fitted).squaredNorm();
  } else {
    row.psse = std::numeric_limits<double>::quiet_NaN();
  }
  int nulls = 0, null_hits = 0, signals = 0, signal_hits = 0;
  for (Eigen::Index i = 0; i < x_hat.size(); ++i) {
    if (data.x_true[i] == 0.0) {
      ++nulls;
      if (x_hat[i] == 0.0) ++null_hits;
    } else {
      ++signals;
      if (x_hat[i] != 0.0) ++signal_hits;
    }
  }
  row.tnr = nulls ? static_cast<double>(null_hits) / nulls : 1.0;
  row.tpr = signals ? static_cast<double>(signal_hits) / signals : 1.0;
  return row;
}

std::vector<MetricsRow> aggregate(const std::vector<MetricsRow>& rows,
                                  const std::vector<Method>& methods) {
  std::vector<MetricsRow> out;
  for (Method m : methods) {
    std::vector<const MetricsRow*> sel;
    for (const auto& r : rows) {
      if (r.method == m) sel.push_back(&r);
    }
    if (sel.empty()) continue;
    auto stats = [&](double MetricsRow::*field) {
      double sum = 0.0;
      for (const auto* r : sel) sum += r->*field;
      const double mean = sum / static_cast<double>(sel.size());
      double ss = 0.0;
      for (const auto* r : sel) ss += (r->*field - mean) * (r->*field - mean);
      const double sd = sel.size() > 1 ? std::sqrt(ss / static_cast<double>(sel.size() - 1)) : 0.0;
      return std::pair{mean, sd};
    };
    MetricsRow mean_row, sd_row;
    mean_row.replication = "mean";
    sd_row.replication = "sd";
    mean_row.method = sd_row.method = m;
    mean_row.seed = sd_row.seed = sel.front()->seed;
    for (auto field : {&MetricsRow::sse, &MetricsRow::psse, &MetricsRow::tnr, &MetricsRow::tpr,
                       &MetricsRow::tau_selected, &MetricsRow::iterations, &MetricsRow::time_s,
                       &MetricsRow::tune_time_s}) {
      const auto [mean, sd] = stats(field);
      mean_row.*field = mean;
      sd_row.*field = sd;
    }
    bool all_converged = true;
    for (const auto* r : sel) all_converged = all_converged && r->converged;
    mean_row.converged = sd_row.converged = all_converged;
    out.push_back(mean_row);
    out.push_back(sd_row);
  }
  return out;
}

MetricsReport run_benchmark(const BenchmarkOptions& options) {
  if (options.replications < 1) throw std::invalid_argument("run_benchmark: replications must be >= 1");
  if (options.methods.empty()) throw std::invalid_argument("run_benchmark: no methods selected");
  const std::vector<double> tau_grid = options.tau_grid.empty() ? default_tau_grid() : options.tau_grid;
  const LlaConfig config =
      options.design == Design::NormalMeans ? LlaConfig::normal_means() : LlaConfig::regression();
  const Horseshoe base(1.0);

  MetricsReport report;
  report.design = options.design;
  for (int rep = 0; rep < options.replications; ++rep) {
    const std::uint64_t seed = replication_seed(options.seed, static_cast<std::uint64_t>(rep));
    const Dataset data = generate(options.design, seed);
    CvPlan plan = make_cv_plan(data.n(), options.folds, tau_grid, make_stream(seed, kFoldStream)());
    plan.means_scheme = options.means_scheme;
    plan.fission_scale = options.fission_scale;
    for (Method method : options.methods) {
      MetricsRow row;
      Eigen::VectorXd x_hat;
      double tuned = 0.0;
      const auto tune_start = std::chrono::steady_clock::now();
      if (method == Method::HsLla) {
        tuned = cross_validate_tau(data, plan, config, base).best;
      } else {
        tuned = cross_validate_lasso(data, plan, lasso_lambda_grid(data, options.lambda_count), config).best;
      }
      const double tune_time = seconds_since(tune_start);

      const auto fit_start = std::chrono::steady_clock::now();
      double iterations = 0.0;
      bool converged = true;
      if (method == Method::HsLla) {
        const Horseshoe prior = base.with_tau(tuned);
        const SolveResult fit = data.is_normal_means() ? lla_normal_means(data.y, prior, config)
                                                       : lla_regression(data.y, *data.phi, prior, config);
        x_hat = fit.x_hat;
        iterations = fit.iterations;
        converged = fit.converged && fit.inner_failures == 0;
      } else if (data.is_normal_means()) {
        x_hat = data.y.unaryExpr([tuned](double v) { return soft_threshold(v, tuned); });
        iterations = 1;
      } else {
        const Eigen::VectorXd w = Eigen::VectorXd::Constant(data.p(), tuned);
        const LassoResult fit = lasso_weighted(data.y, *data.phi, w, Eigen::VectorXd::Zero(data.p()),
                                               config.cd_tol, config.cd_max_sweeps);
        x_hat = fit.x;
        iterations = fit.sweeps;
        converged = fit.converged;
      }
      const double fit_time = seconds_since(fit_start);

      row = evaluate(x_hat, data);
      row.replication = std::to_string(rep);
      row.seed = seed;
      row.method = method;
      row.tau_selected = tuned;
      row.iterations = iterations;
      row.converged = converged;
      row.time_s = options.record_time ? fit_time : 0.0;
      row.tune_time_s = options.record_time ? tune_time : 0.0;
      report.rows.push_back(row);
    }
  }
  report.aggregates = aggregate(report.rows, options.methods);
  return report;
}

void write_rows_csv(const MetricsReport& report, std::ostream& out) {
  out << "replication,seed,method,sse,psse,tnr,tpr,tau_selected,iterations,time_s,tune_time_s,converged\n";
  auto emit = [&out](const MetricsRow& r) {
    out << r.replication << ',' << r.seed << ',' << to_string(r.method) << ',' << format_number(r.sse)
        << ',' << format_number(r.psse) << ',' << format_number(r.tnr) << ',' << format_number(r.tpr)
        << ',' << format_number(r.tau_selected) << ',' << format_number(r.iterations) << ','
        << format_number(r.time_s) << ',' << format_number(r.tune_time_s) << ','
        << (r.converged ? 1 : 0) << '\n';
  };
  for (const auto& r : report.rows) emit(r);
  for (const auto& r : report.aggregates) emit(r);
}

void write_table_csv(const MetricsReport& report, std::ostream& out) {
  auto find = [&](Method m, const char* which) -> const MetricsRow* {
    for (const auto& r : report.aggregates) {
      if (r.method == m && r.replication == which) return &r;
    }
    return nullptr;
  };
  auto cell = [&](Method m, double MetricsRow::*field, bool with_sd) -> std::string {
    const MetricsRow* mean = find(m, "mean");
    const MetricsRow* sd = find(m, "sd");
    if (!mean) return "";
    std::ostringstream os;
    os << std::setprecision(5) << mean->*field;
    if (with_sd && sd) os << " (" << std::setprecision(5) << sd->*field << ")";
    return os.str();
  };
  out << "metric,HS-LLA,HS-MCMC,SCAD,MCP,lasso\n";
  struct Line {
    const char* name;
    double MetricsRow::*field;
    bool with_sd;
  };
  for (const Line& l : {Line{"SSE", &MetricsRow::sse, true}, Line{"pSSE", &MetricsRow::psse, true},
                        Line{"TNR", &MetricsRow::tnr, true}, Line{"TPR", &MetricsRow::tpr, true},
                        Line{"Time (s)", &MetricsRow::time_s, false}}) {
    out << l.name << ",\"" << cell(Method::HsLla, l.field, l.with_sd) << "\",,,,\""
        << cell(Method::Lasso, l.field, l.with_sd) << "\"\n";
  }
}

}  // namespace horseshoe
