#include "horseshoe/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "horseshoe/csv.hpp"
#include "horseshoe/horseshoe_density.hpp"
#include "horseshoe/tuning.hpp"
#include "horseshoe/version.hpp"
#include "json.hpp"

namespace horseshoe::cli {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_exact(v[i]);
  return s;
}

RunManifest make_manifest(std::string command, const std::vector<std::string>& argv, std::uint64_t seed,
                          std::vector<std::pair<std::string, std::string>> params) {
  RunManifest m;
  m.command = std::move(command);
  m.argv = argv;
  m.seed = seed;
  m.params = std::move(params);
  m.version = kVersion;
  m.timestamp = utc_timestamp();
  return m;
}

}  // namespace

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["argv"] = argv;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  j["seed"] = seed;
  j["version"] = version;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  auto f = open_output(path);
  f << manifest.to_json();
}

int cmd_density(const DensityOptions& o, std::ostream& out, std::ostream& err) {
  const bool want_normal = o.route == "normal" || o.route == "both";
  const bool want_laplace = o.route == "laplace" || o.route == "both";
  if (!want_normal && !want_laplace) {
    err << "density: --route must be normal, laplace or both\n";
    return kUsage;
  }
  if (o.points == 0 || (o.points == 1 && o.x_min != o.x_max) ||
      (o.points >= 2 && !(o.x_min < o.x_max))) {
    err << "density: need x-min < x-max with points >= 2, or x-min == x-max with points == 1\n";
    return kUsage;
  }
  HorseshoeParams params{o.tau, o.quad};
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    err << "density: " << e.what() << "\n";
    return kUsage;
  }
  const Horseshoe prior(params);
  std::size_t clipped = 0;
  out << "x";
  if (want_normal) out << ",log_p_normal";
  if (want_laplace) out << ",log_p_laplace";
  if (want_normal && want_laplace) out << ",diff";
  out << "\n";
  for (double x : linspace(o.x_min, o.x_max, o.points)) {
    if (std::abs(x) < prior.floor()) {
      x = std::copysign(prior.floor(), x);
      ++clipped;
    }
    out << format_number(x);
    double ln = 0.0, ll = 0.0;
    if (want_normal) out << ',' << format_number(ln = prior.log_density_normal_mixture(x));
    if (want_laplace) out << ',' << format_number(ll = prior.log_density_laplace_mixture(x));
    if (want_normal && want_laplace) out << ',' << format_number(ln - ll);
    out << "\n";
  }
  if (clipped) {
    err << "warning: " << clipped << " point(s) inside |x| < x_floor * tau = " << prior.floor()
        << " were clipped to the floor\n";
  }
  return kOk;
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  if (o.model != "means" && o.model != "regression") {
    err << "solve: --model must be means or regression\n";
    return kUsage;
  }
  if (o.cv == o.tau.has_value()) {
    err << "solve: give exactly one of --tau or --cv\n";
    return kUsage;
  }
  const bool means = o.model == "means";

  Dataset data;
  try {
    const CsvTable table = read_csv_file(o.input);
    const int y_col = table.column("y");
    if (y_col < 0) throw CsvError(o.input, 1, "no column named 'y'");
    const auto n = static_cast<Eigen::Index>(table.rows.size());
    if (n == 0) throw CsvError(o.input, 2, "no data rows");
    const auto p = static_cast<Eigen::Index>(table.header.size()) - 1;
    if (means && p > 0) throw CsvError(o.input, 1, "model 'means' expects only a 'y' column");
    if (!means && p == 0) throw CsvError(o.input, 1, "model 'regression' needs design columns besides 'y'");
    data.y.resize(n);
    if (!means) data.phi = Eigen::MatrixXd(n, p);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = table.rows[static_cast<std::size_t>(r)];
      Eigen::Index c = 0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (static_cast<int>(j) == y_col) {
          data.y[r] = row[j];
        } else {
          (*data.phi)(r, c++) = row[j];
        }
      }
    }
  } catch (const CsvError& e) {
    err << "solve: " << e.what() << "\n";
    return kUsage;
  }

  LlaConfig config = o.config;
  config.init_value = o.init_value.value_or(means ? 1.0 : 0.1);
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    err << "solve: " << e.what() << "\n";
    return kUsage;
  }

  const Horseshoe base(1.0);
  double tau = o.tau.value_or(0.0);
  std::vector<std::pair<std::string, std::string>> params{
      {"input", o.input}, {"model", o.model}, {"init_value", format_exact(config.init_value)},
      {"tol", format_exact(config.tol)}, {"max_iter", std::to_string(config.max_iter)},
      {"cd_tol", format_exact(config.cd_tol)}, {"cd_max_sweeps", std::to_string(config.cd_max_sweeps)}};
  if (o.cv) {
    std::vector<double> grid = o.tau_grid.empty() ? default_tau_grid() : o.tau_grid;
    CvResult cv;
    try {
      CvPlan plan = make_cv_plan(data.n(), o.folds, grid, o.seed);
      plan.means_scheme = o.means_scheme;
      plan.fission_scale = o.fission_scale;
      cv = cross_validate_tau(data, plan, config, base);
    } catch (const std::invalid_argument& e) {
      err << "solve: " << e.what() << "\n";
      return kUsage;
    }
    tau = cv.best;
    params.push_back({"folds", std::to_string(o.folds)});
    params.push_back({"tau_grid", join(grid)});
    if (means) {
      params.push_back({"cv_scheme", o.means_scheme == MeansCvScheme::Sure ? "sure" : "fission"});
      params.push_back({"fission_scale", format_exact(o.fission_scale)});
    }
    if (!o.cv_curve.empty()) {
      auto f = open_output(o.cv_curve);
      f << "tau,score\n";
      for (std::size_t i = 0; i < cv.grid.size(); ++i) {
        f << format_number(cv.grid[i]) << ',' << format_number(cv.curve[i]) << "\n";
      }
    }
  }
  if (!(tau > 0.0 && std::isfinite(tau))) {
    err << "solve: tau must be positive\n";
    return kUsage;
  }
  params.push_back({"tau", format_exact(tau)});

  const Horseshoe prior = base.with_tau(tau);
  const SolveResult fit = means ? lla_normal_means(data.y, prior, config)
                                : lla_regression(data.y, *data.phi, prior, config);

  std::ostringstream table;
  table << "index,x_hat,weight,nonzero\n";
  for (Eigen::Index i = 0; i < fit.x_hat.size(); ++i) {
    table << i << ',' << format_number(fit.x_hat[i]) << ',' << format_number(fit.weights[i]) << ','
          << (fit.x_hat[i] != 0.0 ? 1 : 0) << "\n";
  }
  std::ostringstream diag;
  diag << "key,value\n"
       << "tau," << format_number(tau) << "\n"
       << "iterations," << fit.iterations << "\n"
       << "converged," << (fit.converged ? 1 : 0) << "\n"
       << "objective," << format_number(fit.objective_trace.back()) << "\n"
       << "support_size," << fit.support.size() << "\n"
       << "inner_failures," << fit.inner_failures << "\n";

  if (o.output.empty()) {
    out << table.str();
    err << diag.str();
  } else {
    open_output(o.output) << table.str();
    open_output(o.output + ".diagnostics.csv") << diag.str();
    write_manifest(make_manifest("solve", o.argv, o.seed, params), o.output + ".manifest.json");
  }
  if (!o.trace.empty()) {
    auto f = open_output(o.trace);
    f << "iteration,objective\n";
    for (std::size_t k = 0; k < fit.objective_trace.size(); ++k) {
      f << k << ',' << format_number(fit.objective_trace[k]) << "\n";
    }
  }
  const bool ok = fit.converged && fit.inner_failures == 0;
  if (!ok && !o.allow_nonconverged) {
    err << "solve: did not converge within " << config.max_iter
        << " iterations (use --allow-nonconverged to accept)\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_benchmark(const BenchmarkCliOptions& o, std::ostream& out, std::ostream& err) {
  if (o.bench.replications < 1) {
    err << "benchmark: --replications must be >= 1\n";
    return kUsage;
  }
  std::filesystem::create_directories(o.out_dir);
  const MetricsReport report = run_benchmark(o.bench);
  const std::string stem = o.out_dir + "/" + to_string(o.bench.design);
  {
    auto f = open_output(stem + "_rows.csv");
    write_rows_csv(report, f);
  }
  {
    auto f = open_output(stem + "_table.csv");
    write_table_csv(report, f);
  }
  std::string methods;
  for (Method m : o.bench.methods) methods += (methods.empty() ? "" : ";") + to_string(m);
  auto manifest = make_manifest(
      "benchmark", o.argv, o.bench.seed,
      {{"design", to_string(o.bench.design)},
       {"replications", std::to_string(o.bench.replications)},
       {"methods", methods},
       {"folds", std::to_string(o.bench.folds)},
       {"tau_grid", join(o.bench.tau_grid.empty() ? default_tau_grid() : o.bench.tau_grid)},
       {"lambda_count", std::to_string(o.bench.lambda_count)},
       {"cv_scheme", o.bench.means_scheme == MeansCvScheme::Sure ? "sure" : "fission"},
       {"fission_scale", format_exact(o.bench.fission_scale)},
       {"record_time", o.bench.record_time ? "true" : "false"},
       {"note", "HS-MCMC, SCAD and MCP columns are external baselines and are left empty"}});
  write_manifest(manifest, o.out_dir + "/manifest.json");
  write_table_csv(report, out);
  for (const auto& r : report.rows) {
    if (!r.converged) {
      err << "warning: replication " << r.replication << " (" << to_string(r.method)
          << ") did not converge\n";
    }
  }
  return kOk;
}

int cmd_validate(const ValidateOptions& o, std::ostream& out, std::ostream& err) {
  HorseshoeParams params{o.tau, o.quad};
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    err << "validate: " << e.what() << "\n";
    return kUsage;
  }
  const Horseshoe prior(params);
  bool all = true;
  auto line = [&](const std::string& name, bool pass, const std::string& detail) {
    out << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    all = all && pass;
  };

  const auto fig_grid = representation_grid(2.0 * o.tau, 401, 0.01 * o.tau);
  const double diff = validate_representation(fig_grid, prior);
  line("representation", diff <= o.tolerance,
       "max |log p_laplace - log p_normal| = " + format_number(diff) + " (tol " + format_number(o.tolerance) + ")");

  const auto n = static_cast<std::size_t>(std::llround((o.x_hi - o.x_lo) / o.step)) + 1;
  const auto grid = linspace(o.x_lo, o.x_hi, n);
  auto describe = [](const MonotonicityReport& r) {
    std::string s;
    for (const auto& c : r.orders) {
      s += "k=" + std::to_string(c.order) + ":" + std::to_string(c.violations) + "/" +
           std::to_string(c.checked) + " ";
    }
    return s + "violations";
  };
  const auto density = monotonicity_report(4, grid, prior, MonotoneTarget::Density, o.slack);
  line("density completely monotone (orders 0-4)", density.all_pass(), describe(density));
  const auto deriv = monotonicity_report(3, grid, prior, MonotoneTarget::PenaltyDerivative, o.slack);
  line("penalty derivative completely monotone (orders 0-3)", deriv.all_pass(), describe(deriv));
  const double concave = max_penalty_second_difference(grid, prior);
  line("penalty strictly concave", concave < 0.0, "max second difference = " + format_number(concave));
  return all ? kOk : kNumerical;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream&) {
  const Dataset data = generate(o.design, o.seed);
  std::ostringstream csv;
  csv << "y";
  for (Eigen::Index k = 0; data.phi && k < data.phi->cols(); ++k) csv << ",phi_" << (k + 1);
  csv << "\n";
  for (Eigen::Index j = 0; j < data.n(); ++j) {
    csv << format_exact(data.y[j]);
    for (Eigen::Index k = 0; data.phi && k < data.phi->cols(); ++k) csv << ',' << format_exact((*data.phi)(j, k));
    csv << "\n";
  }
  if (o.output.empty()) {
    out << csv.str();
  } else {
    open_output(o.output) << csv.str();
    write_manifest(make_manifest("simulate", o.argv, o.seed, {{"design", to_string(o.design)}}),
                   o.output + ".manifest.json");
  }
  if (!o.truth.empty()) {
    auto f = open_output(o.truth);
    f << "index,x_true\n";
    for (Eigen::Index i = 0; i < data.x_true.size(); ++i) f << i << ',' << format_number(data.x_true[i]) << "\n";
  }
  return kOk;
}

}  // namespace horseshoe::cli
