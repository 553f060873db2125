#include <iostream>
#include <map>
#include <stdexcept>

#include "CLI11.hpp"
#include "horseshoe/cli.hpp"
#include "horseshoe/version.hpp"

using namespace horseshoe;
using namespace horseshoe::cli;

namespace {

void add_quadrature_flags(CLI::App* cmd, QuadratureSpec& q) {
  static const std::map<std::string, QuadratureScheme> schemes{
      {"log-trapezoid", QuadratureScheme::LogTrapezoid},
      {"simpson", QuadratureScheme::Simpson},
      {"riemann-midpoint", QuadratureScheme::RiemannMidpoint}};
  static const std::map<std::string, NormalRoute> routes{
      {"log-trapezoid", NormalRoute::LogTrapezoid}, {"tan-simpson", NormalRoute::TanSimpson}};
  static const std::map<std::string, DawsonMode> dawson{
      {"exact", DawsonMode::Exact}, {"rational", DawsonMode::Rational}};
  cmd->add_option("--scheme", q.scheme, "Laplace-mixture quadrature scheme")
      ->transform(CLI::CheckedTransformer(schemes, CLI::ignore_case))
      ->capture_default_str();
  cmd->add_option("--u-max", q.u_max, "Upper limit of the uniform Dawson grid")->capture_default_str();
  cmd->add_option("--n-points", q.n_points, "Points of the uniform Dawson grid (odd)")->capture_default_str();
  cmd->add_option("--log-step", q.log_step, "Step of the log-trapezoid lattice")->capture_default_str();
  cmd->add_option("--normal-route", q.normal_route, "Quadrature for the normal-mixture route")
      ->transform(CLI::CheckedTransformer(routes, CLI::ignore_case))
      ->capture_default_str();
  cmd->add_option("--normal-points", q.normal_points, "Points for the tan-Simpson normal route")
      ->capture_default_str();
  cmd->add_option("--x-floor", q.x_floor, "Relative floor: |x| below x_floor*tau is rejected")
      ->capture_default_str();
  cmd->add_option("--dawson", q.dawson, "Dawson evaluator")
      ->transform(CLI::CheckedTransformer(dawson, CLI::ignore_case))
      ->capture_default_str();
}

void add_lla_flags(CLI::App* cmd, LlaConfig& c) {
  cmd->add_option("--tol", c.tol, "LLA stopping tolerance on sum of squared changes")->capture_default_str();
  cmd->add_option("--max-iter", c.max_iter, "Maximum LLA iterations")->capture_default_str();
  cmd->add_option("--cd-tol", c.cd_tol, "Coordinate-descent tolerance")->capture_default_str();
  cmd->add_option("--cd-max-sweeps", c.cd_max_sweeps, "Coordinate-descent sweep limit")->capture_default_str();
}

const std::map<std::string, Design> kDesigns{{"normal-means", Design::NormalMeans},
                                            {"means", Design::NormalMeans},
                                            {"regression", Design::Regression}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horseshoe penalty: densities, LLA solver and benchmarks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Read key = value settings (flags take precedence)");
  app.require_subcommand(1);

  DensityOptions density;
  auto* c_density = app.add_subcommand("density", "Log density by both mixture routes as CSV");
  c_density->add_option("--x-min", density.x_min)->capture_default_str();
  c_density->add_option("--x-max", density.x_max)->capture_default_str();
  c_density->add_option("--points", density.points)->capture_default_str();
  c_density->add_option("--tau", density.tau, "Global scale")->capture_default_str();
  c_density->add_option("--route", density.route, "normal | laplace | both")
      ->check(CLI::IsMember({"normal", "laplace", "both"}))
      ->capture_default_str();
  add_quadrature_flags(c_density, density.quad);

  SolveOptions solve;
  auto* c_solve = app.add_subcommand("solve", "MAP estimate by LLA from a CSV file");
  c_solve->add_option("input", solve.input, "CSV with column y (and design columns for regression)")
      ->required();
  c_solve->add_option("--model", solve.model, "means | regression")
      ->check(CLI::IsMember({"means", "regression"}))
      ->capture_default_str();
  auto* tau_opt = c_solve->add_option("--tau", solve.tau, "Fixed global scale");
  auto* cv_flag = c_solve->add_flag("--cv", solve.cv, "Choose tau by cross-validation");
  tau_opt->excludes(cv_flag);
  c_solve->add_option("--folds", solve.folds)->capture_default_str();
  c_solve->add_option("--seed", solve.seed, "Seed for fold assignment")->capture_default_str();
  c_solve->add_option("--tau-grid", solve.tau_grid, "Candidate tau values")->delimiter(',');
  c_solve->add_option("--init", solve.init_value, "Initial iterate value");
  c_solve->add_option("--cv-scheme", solve.means_scheme, "Normal-means CV: fission | sure")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, MeansCvScheme>{{"fission", MeansCvScheme::DataFission}, {"sure", MeansCvScheme::Sure}},
          CLI::ignore_case));
  c_solve->add_option("--fission-scale", solve.fission_scale, "Fission split scale c")->capture_default_str();
  c_solve->add_flag("--allow-nonconverged", solve.allow_nonconverged);
  c_solve->add_option("-o,--output", solve.output, "x_hat CSV (default stdout)");
  c_solve->add_option("--trace", solve.trace, "Objective trace CSV");
  c_solve->add_option("--cv-curve", solve.cv_curve, "tau,score CSV");
  add_lla_flags(c_solve, solve.config);

  BenchmarkCliOptions bench;
  std::vector<std::string> methods{"hs-lla", "lasso"};
  bool no_timing = false;
  auto* c_bench = app.add_subcommand("benchmark", "Simulation study over seeded replications");
  c_bench->add_option("--design", bench.bench.design, "normal-means | regression")
      ->transform(CLI::CheckedTransformer(kDesigns, CLI::ignore_case))
      ->required();
  c_bench->add_option("--replications", bench.bench.replications)->capture_default_str();
  c_bench->add_option("--seed", bench.bench.seed)->capture_default_str();
  c_bench->add_option("--methods", methods, "hs-lla, lasso")
      ->delimiter(',')
      ->check(CLI::IsMember({"hs-lla", "lasso"}))
      ->capture_default_str();
  c_bench->add_option("--folds", bench.bench.folds)->capture_default_str();
  c_bench->add_option("--tau-grid", bench.bench.tau_grid)->delimiter(',');
  c_bench->add_option("--lambda-count", bench.bench.lambda_count)->capture_default_str();
  c_bench->add_option("--cv-scheme", bench.bench.means_scheme, "Normal-means CV: fission | sure")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, MeansCvScheme>{{"fission", MeansCvScheme::DataFission}, {"sure", MeansCvScheme::Sure}},
          CLI::ignore_case));
  c_bench->add_option("--fission-scale", bench.bench.fission_scale, "Fission split scale c")->capture_default_str();
  c_bench->add_option("--out-dir", bench.out_dir)->capture_default_str();
  c_bench->add_flag("--no-timing", no_timing, "Write zero timings so reruns are byte-identical");

  ValidateOptions validate;
  auto* c_validate = app.add_subcommand("validate", "Representation and monotonicity checks");
  c_validate->add_option("--tau", validate.tau)->capture_default_str();
  c_validate->add_option("--tolerance", validate.tolerance)->capture_default_str();
  c_validate->add_option("--x-lo", validate.x_lo)->capture_default_str();
  c_validate->add_option("--x-hi", validate.x_hi)->capture_default_str();
  c_validate->add_option("--step", validate.step)->capture_default_str();
  c_validate->add_option("--slack", validate.slack)->capture_default_str();
  add_quadrature_flags(c_validate, validate.quad);

  SimulateOptions simulate;
  auto* c_simulate = app.add_subcommand("simulate", "Export one seeded benchmark dataset as CSV");
  c_simulate->add_option("--design", simulate.design)
      ->transform(CLI::CheckedTransformer(kDesigns, CLI::ignore_case))
      ->required();
  c_simulate->add_option("--seed", simulate.seed)->capture_default_str();
  c_simulate->add_option("-o,--output", simulate.output);
  c_simulate->add_option("--truth", simulate.truth, "index,x_true CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const std::vector<std::string> invocation(argv, argv + argc);
  solve.argv = bench.argv = simulate.argv = invocation;
  try {
    if (*c_density) return cmd_density(density, std::cout, std::cerr);
    if (*c_solve) return cmd_solve(solve, std::cout, std::cerr);
    if (*c_bench) {
      bench.bench.methods.clear();
      for (const auto& m : methods) bench.bench.methods.push_back(parse_method(m));
      bench.bench.record_time = !no_timing;
      return cmd_benchmark(bench, std::cout, std::cerr);
    }
    if (*c_validate) return cmd_validate(validate, std::cout, std::cerr);
    if (*c_simulate) return cmd_simulate(simulate, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
