#include "table_output.hpp"

#include <cstdio>
#include <sstream>

namespace spinpair::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* s = std::get_if<std::string>(&cell)) return csv_escape(*s);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_g17(*d);
  return std::get<bool>(cell) ? "true" : "false";
}

std::string cell_json(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "null";
  if (const auto* s = std::get_if<std::string>(&cell)) return "\"" + json_escape(*s) + "\"";
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_g17(*d);
  return std::get<bool>(cell) ? "true" : "false";
}

}  // namespace

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << csv_escape(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << cell_text(row[c]);
    }
    out << '\n';
  }
  if (!table.checks.empty()) {
    out << "\nname,expected,actual,tolerance,pass\n";
    for (const auto& check : table.checks) {
      out << csv_escape(check.name) << ',' << format_g17(check.expected) << ','
          << format_g17(check.actual) << ',' << format_g17(check.tolerance) << ','
          << (check.pass ? "true" : "false") << '\n';
    }
  }
  return out.str();
}

std::string render_json(const Table& table) {
  std::ostringstream out;
  out << "{\n  \"command\": \"" << json_escape(table.command) << "\",\n  \"config\": {";
  for (std::size_t i = 0; i < table.config.size(); ++i) {
    out << (i ? "," : "") << "\n    \"" << json_escape(table.config[i].first)
        << "\": " << cell_json(table.config[i].second);
  }
  out << (table.config.empty() ? "" : "\n  ") << "},\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? "," : "") << "\n    {";
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      out << (c ? ", " : "") << "\"" << json_escape(table.columns[c])
          << "\": " << cell_json(row[c]);
    }
    out << "}";
  }
  out << (table.rows.empty() ? "" : "\n  ") << "],\n  \"checks\": [";
  for (std::size_t i = 0; i < table.checks.size(); ++i) {
    const auto& check = table.checks[i];
    out << (i ? "," : "") << "\n    {\"name\": \"" << json_escape(check.name)
        << "\", \"expected\": " << format_g17(check.expected)
        << ", \"actual\": " << format_g17(check.actual)
        << ", \"tolerance\": " << format_g17(check.tolerance)
        << ", \"pass\": " << (check.pass ? "true" : "false") << "}";
  }
  out << (table.checks.empty() ? "" : "\n  ") << "]\n}\n";
  return out.str();
}

}  // namespace spinpair::cli
