#include "table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace bdelta::cli {

namespace {

nlohmann::ordered_json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          // JSON has no nan/inf; numbers otherwise print as shortest round-trip
          if (!std::isfinite(v)) return format_cell(v);
          return v;
        } else {
          return v;
        }
      },
      c);
}

// Mixed-type ordering for sort keys: numbers before strings.
bool cell_less(const Cell& a, const Cell& b) {
  auto num = [](const Cell& c, double& out) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return out = static_cast<double>(*i), true;
    if (const auto* d = std::get_if<double>(&c)) return out = *d, true;
    if (const auto* b = std::get_if<bool>(&c)) return out = *b ? 1.0 : 0.0, true;
    return false;
  };
  double x, y;
  const bool nx = num(a, x), ny = num(b, y);
  if (nx && ny) return x < y;
  if (nx != ny) return nx;
  return std::get<std::string>(a) < std::get<std::string>(b);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (std::isnan(v)) return "nan";
          if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", v);
          return buf;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "1" : "0";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      c);
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the columns of " + command);
  rows.push_back(std::move(row));
}

void Table::sort() {
  const std::size_t k = std::min(sort_keys, columns.size());
  std::stable_sort(rows.begin(), rows.end(), [k](const auto& a, const auto& b) {
    for (std::size_t i = 0; i < k; ++i) {
      if (cell_less(a[i], b[i])) return true;
      if (cell_less(b[i], a[i])) return false;
    }
    return false;
  });
}

void Table::write_csv(std::ostream& os) const {
  os << "# bdelta schema=" << kSchemaVersion << " command=" << command << '\n';
  os << "# defaults:";
  for (const auto& [k, v] : defaults) os << ' ' << k << '=' << v;
  os << "\n# params:";
  for (const auto& [k, v] : params) os << ' ' << k << '=' << v;
  os << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(format_cell(r[i]));
    os << '\n';
  }
  for (const auto& [k, v] : summary) os << "# summary " << k << '=' << format_cell(v) << '\n';
}

void Table::write_json(std::ostream& os) const {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["defaults"] = defaults;
  j["params"] = params;
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < r.size(); ++i) o[columns[i]] = to_json(r[i]);
    arr.push_back(std::move(o));
  }
  if (!summary.empty()) {
    nlohmann::ordered_json s;
    for (const auto& [k, v] : summary) s[k] = to_json(v);
    j["summary"] = std::move(s);
  }
  os << j.dump(2) << '\n';
}

}  // namespace bdelta::cli
