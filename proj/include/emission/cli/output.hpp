#pragma once

// Tabular output shared by all subcommands.
//
// CSV: '#'-prefixed metadata lines, then a header row and data rows, numbers
// with 12 significant digits, RFC-4180 quoting. Extra tables go to sibling
// files "<stem>_<table><ext>".
// JSON: one object {"metadata": {...}, "tables": [{"name", "columns",
// "rows"}]}, numbers with 17 significant digits, empty cells as null.

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "emission/cli/config.hpp"

namespace emission::cli {

inline constexpr const char* kSchemaVersion = "emission-output/1";

/// An empty cell (not applicable or failed).
struct Blank {};

using Cell = std::variant<Blank, double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::logic_error when the row width does not match the header.
  void add_row(std::vector<Cell> row);
};

struct Document {
  std::string command;
  /// Ordered key/value metadata; "schema" and "command" are added on output.
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<Table> tables;
};

std::string format_number(double value, int significant_digits);
std::string csv_escape(const std::string& field);

void write_csv_table(std::ostream& out, const Document& doc, const Table& table);
void write_json(std::ostream& out, const Document& doc);

/// Writes to config.output.path (standard output when empty) in the selected
/// format. Throws ConfigError when a file cannot be opened.
void emit(const Document& doc, const OutputConfig& output, std::ostream& stdout_stream);

/// Sibling path for table `name`: "<dir>/<stem>_<name><ext>".
std::filesystem::path sibling_path(const std::filesystem::path& primary, const std::string& name);

}  // namespace emission::cli
