#include "gamow/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "gamow/cli/config.hpp"

namespace gamow::cli {

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvCell {
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(double v) const { return format_real(v); }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(const std::string& v) const { return quote_if_needed(v); }
};

struct JsonCell {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(double v) const {
    if (!std::isfinite(v)) return nullptr;
    return v;
  }
  nlohmann::ordered_json operator()(long long v) const { return v; }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
};

}  // namespace

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12e", value);
  return buffer;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json-doc") return OutputFormat::JsonDoc;
  throw ConfigError("format must be csv or json-doc, got '" + name + "'");
}

void write_csv(std::ostream& out, const Table& table) {
  out << "# gamow-lab " << table.command << '\n';
  for (const auto& [key, value] : table.parameters) out << "# " << key << " = " << value << '\n';
  for (const auto& note : table.notes) out << "# " << note << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
    out << '\n';
  }
}

void write_json_doc(std::ostream& out, const Table& table) {
  nlohmann::ordered_json doc;
  doc["command"] = table.command;
  doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.parameters) doc["parameters"][key] = value;
  doc["notes"] = table.notes;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& cell : row) cells.push_back(std::visit(JsonCell{}, cell));
    doc["rows"].push_back(std::move(cells));
  }
  out << doc.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    write_csv(out, table);
  } else {
    write_json_doc(out, table);
  }
}

}  // namespace gamow::cli
