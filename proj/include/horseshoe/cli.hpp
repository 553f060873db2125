#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "horseshoe/experiments.hpp"
#include "horseshoe/lla_solver.hpp"
#include "horseshoe/quadrature.hpp"
#include "horseshoe/tuning.hpp"

namespace horseshoe::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kNotConverged = 3 };

/// Provenance written next to every output file as <file>.manifest.json.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::vector<std::pair<std::string, std::string>> params;  // resolved values
  std::uint64_t seed = 0;
  std::string version;
  std::string timestamp;  // UTC, ISO 8601

  std::string to_json() const;
};

void write_manifest(const RunManifest& manifest, const std::string& path);

struct DensityOptions {
  double x_min = -2.0;
  double x_max = 2.0;
  std::size_t points = 401;
  double tau = 1.0;
  std::string route = "both";  // normal | laplace | both
  QuadratureSpec quad;
};

/// x,log_p_normal,log_p_laplace,diff (diff = normal - laplace). Points inside
/// the floor window are clamped to its edge with a warning on `err`.
int cmd_density(const DensityOptions& options, std::ostream& out, std::ostream& err);

struct SolveOptions {
  std::string input;
  std::string model = "means";  // means | regression
  std::optional<double> tau;
  bool cv = false;
  int folds = 10;
  std::uint64_t seed = 1;
  std::vector<double> tau_grid;  // empty: default grid
  MeansCvScheme means_scheme = MeansCvScheme::DataFission;
  double fission_scale = 0.5;
  std::optional<double> init_value;  // default: 1 (means) or 0.1 (regression)
  LlaConfig config;
  bool allow_nonconverged = false;
  std::string output;    // empty: stdout
  std::string trace;     // objective trace CSV, optional
  std::string cv_curve;  // tau,score CSV, optional
  std::vector<std::string> argv;  // recorded in the manifest
};

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);

struct BenchmarkCliOptions {
  BenchmarkOptions bench;
  std::string out_dir = ".";
  std::vector<std::string> argv;
};

/// Writes <design>_rows.csv, <design>_table.csv and manifest.json into out_dir.
int cmd_benchmark(const BenchmarkCliOptions& options, std::ostream& out, std::ostream& err);

struct ValidateOptions {
  double tau = 1.0;
  double tolerance = 1e-8;
  double x_lo = 0.05;
  double x_hi = 10.0;
  double step = 1e-3;
  double slack = 1e-6;
  QuadratureSpec quad;
};

/// Representation identity, complete monotonicity and penalty concavity,
/// one PASS/FAIL line each. Exit code 2 if any check fails.
int cmd_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  Design design = Design::NormalMeans;
  std::uint64_t seed = 1;
  std::string output;  // y[,phi_1..phi_p]; empty: stdout
  std::string truth;   // index,x_true; optional
  std::vector<std::string> argv;
};

/// Exports a seeded dataset at full precision for `solve`.
int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

}  // namespace horseshoe::cli
