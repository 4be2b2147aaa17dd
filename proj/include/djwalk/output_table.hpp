// Tables emitted by the command-line tool.
//
// CSV: a block of "# key=value" metadata lines, a header line, then rows.
// JSON: {"metadata": {...}, "columns": [...], "rows": [[...], ...]}.
// Doubles are written with the shortest representation that round-trips.
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace djwalk {

using Cell = std::variant<std::monostate, long long, double, std::string, bool>;
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v);
std::string format_cell(const Cell& c);

class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void set_meta(const std::string& key, std::string value);
  const std::string* meta(const std::string& key) const;
  const Metadata& metadata() const { return metadata_; }

  /// Throws std::invalid_argument unless the row has one cell per column.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t column_index(const std::string& name) const;

  void write_csv(std::ostream& os) const;
  nlohmann::json to_json() const;
  std::string to_csv() const;

 private:
  Metadata metadata_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace djwalk
