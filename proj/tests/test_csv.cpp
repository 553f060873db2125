#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "horseshoe/csv.hpp"

using namespace horseshoe;

TEST_CASE("read_csv") {
  std::istringstream in("y,a\n1,2\n\n-3.5,1e-3\n");
  const auto t = read_csv(in);
  CHECK(t.header == std::vector<std::string>{"y", "a"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][1] == 1e-3);
  CHECK(t.column("a") == 1);
  CHECK(t.column("b") == -1);
}

TEST_CASE("read_csv errors carry the line number") {
  std::istringstream bad("y\n1\nx\n");
  try {
    read_csv(bad, "f.csv");
    FAIL("expected CsvError");
  } catch (const CsvError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("f.csv:3") != std::string::npos);
  }
  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(read_csv(ragged), CsvError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), CsvError);
  std::istringstream nan("a\nnan\n");
  CHECK_THROWS_AS(read_csv(nan), CsvError);
  CHECK_THROWS_AS(read_csv_file("/nonexistent/file.csv"), CsvError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()).empty());
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_exact(v)) == v);
}
