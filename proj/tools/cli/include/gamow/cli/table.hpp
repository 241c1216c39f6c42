#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gamow::cli {

/// Empty, real, integer or text cell.
using Cell = std::variant<std::monostate, double, long long, std::string>;

/// Result of one subcommand: parameters and notes go into the header, rows
/// keep grid order.
struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class OutputFormat { Csv, JsonDoc };

OutputFormat parse_format(const std::string& name);

/// '#'-prefixed header lines, one column header row, then the rows. Reals use
/// "%.12e" so repeated runs are byte-identical.
void write_csv(std::ostream& out, const Table& table);

/// One JSON object: command, parameters, notes, columns, rows.
void write_json_doc(std::ostream& out, const Table& table);

void write_table(std::ostream& out, const Table& table, OutputFormat format);

std::string format_real(double value);

}  // namespace gamow::cli
