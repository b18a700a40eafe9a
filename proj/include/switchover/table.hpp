#pragma once

// Flat result tables with '#'-commented CSV and versioned JSON output.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace switchover {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless or text
};

inline constexpr int table_schema_version = 1;

class Table {
 public:
  explicit Table(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void add_column(std::string name, std::string unit = {});
  void add_row(std::vector<Cell> row);  // size must match the columns
  void add_meta(std::string key, std::string value);
  void add_meta(std::string key, double value);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& meta() const { return meta_; }
  std::size_t column_index(const std::string& name) const;  // throws if missing

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

/// %.17g; nan and inf spelled out.
std::string format_double(double v);

}  // namespace switchover
