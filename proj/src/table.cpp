#include "switchover/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

#include "switchover/error.hpp"

namespace switchover {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add_column(std::string name, std::string unit) {
  if (!rows_.empty()) throw InvalidArgument("columns must be added before rows");
  columns_.push_back({std::move(name), std::move(unit)});
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw InvalidArgument("row width does not match table " + name_);
  rows_.push_back(std::move(row));
}

void Table::add_meta(std::string key, std::string value) { meta_.emplace_back(std::move(key), std::move(value)); }
void Table::add_meta(std::string key, double value) { add_meta(std::move(key), format_double(value)); }

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return i;
  throw InvalidArgument("table " + name_ + " has no column " + name);
}

namespace {
std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}
}  // namespace

void Table::write_csv(std::ostream& os) const {
  os << "# table: " << name_ << "\n";
  os << "# schema_version: " << table_schema_version << "\n";
  for (const auto& [k, v] : meta_) {
    std::string line = v;
    for (auto& c : line)
      if (c == '\n') c = ' ';
    os << "# " << k << ": " << line << "\n";
  }
  std::string units;
  for (const auto& c : columns_) units += c.unit;
  if (!units.empty()) {
    os << "# units:";
    for (const auto& c : columns_) os << ' ' << c.name << '=' << (c.unit.empty() ? "-" : c.unit);
    os << "\n";
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << csv_text(columns_[i].name);
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (auto d = std::get_if<double>(&row[i]))
        os << format_double(*d);
      else if (auto n = std::get_if<std::int64_t>(&row[i]))
        os << *n;
      else
        os << csv_text(std::get<std::string>(row[i]));
    }
    os << "\n";
  }
}

void Table::write_json(std::ostream& os) const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "switchover.table";
  j["schema_version"] = table_schema_version;
  j["name"] = name_;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : meta_) meta[k] = v;
  j["metadata"] = meta;
  ordered_json cols = ordered_json::array();
  for (const auto& c : columns_) cols.push_back({{"name", c.name}, {"unit", c.unit}});
  j["columns"] = cols;
  ordered_json rows = ordered_json::array();
  for (const auto& row : rows_) {
    ordered_json r = ordered_json::array();
    for (const auto& cell : row) {
      if (auto d = std::get_if<double>(&cell))
        r.push_back(std::isfinite(*d) ? ordered_json(*d) : ordered_json(nullptr));
      else if (auto n = std::get_if<std::int64_t>(&cell))
        r.push_back(*n);
      else
        r.push_back(std::get<std::string>(cell));
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  os << j.dump(1) << "\n";
}

}  // namespace switchover
