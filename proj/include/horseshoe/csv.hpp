#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace horseshoe {

/// Malformed numeric CSV; carries the 1-based line number.
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Header plus rows of numbers. Blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of the named column, or -1.
  int column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in, const std::string& source = "<input>");
CsvTable read_csv_file(const std::string& path);

/// Shortest decimal with 12 significant digits; NaN becomes an empty field.
std::string format_number(double v);
/// 17 significant digits: parses back to the identical double.
std::string format_exact(double v);

}  // namespace horseshoe
