#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace bdelta::cli {

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<std::int64_t, double, bool, std::string>;

/// Result rows of one command. Rows are sorted by the leading sort_keys
/// columns before writing; doubles print with 17 significant digits.
struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::size_t sort_keys = 0;
  /// Provenance, printed in the header.
  std::map<std::string, std::string> defaults;
  std::map<std::string, std::string> params;
  /// Trailing summary lines (CSV comments, JSON "summary" object).
  std::map<std::string, Cell> summary;

  void add(std::vector<Cell> row);
  void sort();
  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

std::string format_cell(const Cell& c);

}  // namespace bdelta::cli
