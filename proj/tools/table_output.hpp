#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace spinpair::cli {

// One table cell.  Every floating value in CSV and JSON goes through the same
// 17-significant-digit formatter, so both renderings carry identical text.
using Cell = std::variant<std::monostate, std::string, long long, double, bool>;

struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Table {
  std::string command;
  std::vector<std::pair<std::string, Cell>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<Check> checks;
};

std::string format_g17(double v);

// Rows table with a header; when checks exist, a blank line and a second
// name,expected,actual,tolerance,pass table follow.
std::string render_csv(const Table& table);

// {"command", "config", "rows", "checks"} with the same numeric rendering.
std::string render_json(const Table& table);

}  // namespace spinpair::cli
