#pragma once

// Minimal CSV helpers for the artifact files. Fields never contain commas.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace caft::csv {

/// Shortest text that parses back to the same double; "NA" for NaN.
std::string format_number(double x);
std::string format_optional(const std::optional<double>& x);
double parse_number(const std::string& s);

std::vector<std::string> split(const std::string& line, char sep = ',');

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t column(const std::string& name) const;
  [[nodiscard]] const std::string& at(std::size_t row, const std::string& name) const;
  [[nodiscard]] double number(std::size_t row, const std::string& name) const;
};

Table read(std::istream& in);
Table read_file(const std::filesystem::path& path);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  Writer& row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace caft::csv
