#include "djwalk/output_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace djwalk {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

namespace {

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

void OutputTable::set_meta(const std::string& key, std::string value) {
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata_.emplace_back(key, std::move(value));
}

const std::string* OutputTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata_) {
    if (k == key) return &v;
  }
  return nullptr;
}

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("OutputTable: row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::size_t OutputTable::column_index(const std::string& name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("OutputTable: no column " + name);
  return static_cast<std::size_t>(it - columns_.begin());
}

void OutputTable::write_csv(std::ostream& os) const {
  for (const auto& [k, v] : metadata_) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << quote_csv(columns_[i]);
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << quote_csv(format_cell(row[i]));
    os << '\n';
  }
}

std::string OutputTable::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

nlohmann::json OutputTable::to_json() const {
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : metadata_) meta[k] = v;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json r = nlohmann::json::array();
    for (const Cell& c : row) {
      struct Visitor {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(long long v) const { return v; }
        nlohmann::json operator()(double v) const {
          // JSON has no inf/nan; keep them readable as strings.
          if (!std::isfinite(v)) return format_double(v);
          return v;
        }
        nlohmann::json operator()(const std::string& v) const { return v; }
        nlohmann::json operator()(bool v) const { return v; }
      };
      r.push_back(std::visit(Visitor{}, c));
    }
    rows.push_back(std::move(r));
  }
  return {{"metadata", std::move(meta)}, {"columns", columns_}, {"rows", std::move(rows)}};
}

}  // namespace djwalk
