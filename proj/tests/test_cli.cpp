#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "horseshoe/csv.hpp"
#include "horseshoe/experiments.hpp"
#include "horseshoe/tuning.hpp"

using namespace horseshoe;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("hslla_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

// Runs the CLI with stdout redirected to `out`; returns the exit status.
int run(const std::string& args, const std::string& out, const std::string& err = "/dev/null") {
  const std::string cmd = std::string(HSLLA_BINARY) + " " + args + " > " + out + " 2> " + err;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Comma-split text rows, header included.
std::vector<std::vector<std::string>> read_text(const std::string& path) {
  std::ifstream f(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("cli density") {
  Scratch s;
  REQUIRE(run("density", s.path("both.csv")) == 0);
  const auto both = read_csv_file(s.path("both.csv"));
  CHECK(both.rows.size() == 401);
  const int diff = both.column("diff");
  double worst = 0.0;
  for (const auto& r : both.rows) worst = std::max(worst, std::abs(r[static_cast<std::size_t>(diff)]));
  CHECK(worst <= 1e-8);

  REQUIRE(run("density --route normal", s.path("n.csv")) == 0);
  REQUIRE(run("density --route laplace", s.path("l.csv")) == 0);
  const auto n = read_csv_file(s.path("n.csv"));
  const auto l = read_csv_file(s.path("l.csv"));
  for (std::size_t i = 0; i < both.rows.size(); ++i) {
    CHECK(n.rows[i][1] == both.rows[i][1]);
    CHECK(l.rows[i][1] == both.rows[i][2]);
  }

  REQUIRE(run("density --x-min 1 --x-max 1 --points 1 --tau 1 --route laplace", s.path("one.csv")) == 0);
  CHECK(read_csv_file(s.path("one.csv")).rows.size() == 1);
  CHECK(run("density --x-min 1 --x-max 0", s.path("bad.csv")) == 1);
  CHECK(run("density --route sideways", s.path("bad.csv")) == 1);

  REQUIRE(run("density --x-min -1 --x-max 1 --points 3", s.path("clip.csv"), s.path("clip.err")) == 0);
  CHECK(slurp(s.path("clip.err")).find("warning") != std::string::npos);
}

TEST_CASE("cli solve") {
  Scratch s;
  {
    std::ofstream f(s.path("zeros.csv"));
    f << "y\n0\n0\n0\n";
  }
  REQUIRE(run("solve " + s.path("zeros.csv") + " --tau 1 -o " + s.path("x.csv"), s.path("o.txt")) == 0);
  for (const auto& r : read_csv_file(s.path("x.csv")).rows) CHECK(r[1] == 0.0);
  CHECK(fs::exists(s.path("x.csv.manifest.json")));
  CHECK(fs::exists(s.path("x.csv.diagnostics.csv")));

  // Regression on an exported dataset matches the library call.
  REQUIRE(run("simulate --design regression --seed 9 -o " + s.path("reg.csv"), s.path("o.txt")) == 0);
  REQUIRE(run("solve " + s.path("reg.csv") + " --model regression --tau 0.1 --trace " + s.path("t.csv") +
                  " -o " + s.path("fit.csv"),
              s.path("o.txt")) == 0);
  const Dataset data = generate_regression(9);
  const auto lib = lla_regression(data.y, *data.phi, Horseshoe(0.1));
  const auto cli = read_csv_file(s.path("fit.csv"));
  REQUIRE(cli.rows.size() == 100);
  for (std::size_t i = 0; i < 100; ++i) CHECK(cli.rows[i][1] == std::stod(format_number(lib.x_hat[static_cast<Eigen::Index>(i)])));
  CHECK(read_csv_file(s.path("t.csv")).rows.size() == lib.objective_trace.size());

  // --cv picks the library's tau for the same plan.
  REQUIRE(run("solve " + s.path("reg.csv") + " --model regression --cv --folds 5 --seed 4 --tau-grid 0.01,0.1,1 -o " +
                  s.path("cv.csv") + " --cv-curve " + s.path("curve.csv"),
              s.path("o.txt")) == 0);
  const auto plan = make_cv_plan(data.n(), 5, {0.01, 0.1, 1.0}, 4);
  const auto cv = cross_validate_tau(data, plan, LlaConfig::regression(), Horseshoe(1.0));
  const auto diag = read_text(s.path("cv.csv.diagnostics.csv"));
  REQUIRE(diag.size() > 1);
  CHECK(diag[1][0] == "tau");
  CHECK(std::stod(diag[1][1]) == std::stod(format_number(cv.best)));
  CHECK(read_csv_file(s.path("curve.csv")).rows.size() == 3);
}

TEST_CASE("cli error handling and exit codes") {
  Scratch s;
  {
    std::ofstream f(s.path("bad.csv"));
    f << "y\n1\n2\nfoo\n";
  }
  CHECK(run("solve " + s.path("bad.csv") + " --tau 1", s.path("o.txt"), s.path("e.txt")) == 1);
  CHECK(slurp(s.path("e.txt")).find(":4:") != std::string::npos);
  CHECK(run("solve " + s.path("missing.csv") + " --tau 1", s.path("o.txt")) == 1);
  CHECK(run("solve " + s.path("bad.csv"), s.path("o.txt")) == 1);
  CHECK(run("frobnicate", s.path("o.txt")) == 1);

  REQUIRE(run("simulate --design means --seed 2 -o " + s.path("m.csv"), s.path("o.txt")) == 0);
  CHECK(run("solve " + s.path("m.csv") + " --tau 0.1 --max-iter 1", s.path("o.txt")) == 3);
  CHECK(run("solve " + s.path("m.csv") + " --tau 0.1 --max-iter 1 --allow-nonconverged", s.path("o.txt")) == 0);

  // Config file below flags.
  {
    std::ofstream f(s.path("cfg.ini"));
    f << "solve.tau = 0.1\nsolve.max-iter = 1\n";
  }
  CHECK(run("--config " + s.path("cfg.ini") + " solve " + s.path("m.csv"), s.path("o.txt")) == 3);
  CHECK(run("--config " + s.path("cfg.ini") + " solve " + s.path("m.csv") + " --max-iter 500", s.path("o.txt")) == 0);
}

TEST_CASE("cli benchmark and validate") {
  Scratch s;
  const std::string args = "benchmark --design normal-means --replications 1 --no-timing --seed 3 --out-dir ";
  REQUIRE(run(args + s.path("a"), s.path("o.txt")) == 0);
  REQUIRE(run(args + s.path("b"), s.path("o.txt")) == 0);
  // Header, two method rows, then mean and sd per method.
  CHECK(read_text(s.path("a/normal-means_rows.csv")).size() == 7);
  CHECK(slurp(s.path("a/normal-means_rows.csv")) == slurp(s.path("b/normal-means_rows.csv")));
  CHECK(slurp(s.path("a/normal-means_table.csv")) == slurp(s.path("b/normal-means_table.csv")));
  CHECK(fs::exists(s.path("a/manifest.json")));

  REQUIRE(run("validate", s.path("v.txt")) == 0);
  const std::string v = slurp(s.path("v.txt"));
  CHECK(v.find("FAIL") == std::string::npos);
  CHECK(v.find("PASS representation") != std::string::npos);
}
