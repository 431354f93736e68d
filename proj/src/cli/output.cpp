#include "emission/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "emission/errors.hpp"

namespace emission::cli {

namespace {

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string cell_csv(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) return format_number(std::get<double>(cell), 12);
  if (std::holds_alternative<std::string>(cell)) return csv_escape(std::get<std::string>(cell));
  return "";
}

std::string cell_json(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) {
    const double v = std::get<double>(cell);
    return std::isfinite(v) ? format_number(v, 17) : "null";
  }
  if (std::holds_alternative<std::string>(cell)) return json_string(std::get<std::string>(cell));
  return "null";
}

std::vector<std::pair<std::string, Cell>> full_metadata(const Document& doc) {
  std::vector<std::pair<std::string, Cell>> meta = {{"schema", std::string(kSchemaVersion)},
                                                    {"command", doc.command}};
  meta.insert(meta.end(), doc.metadata.begin(), doc.metadata.end());
  return meta;
}

void write_csv_file(const std::filesystem::path& path, const Document& doc, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path.string() + "'");
  write_csv_table(out, doc, table);
  if (!out) throw ConfigError("failed writing output file '" + path.string() + "'");
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table '" + name + "': row width " + std::to_string(row.size()) +
                           " does not match " + std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string format_number(double value, int significant_digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_table(std::ostream& out, const Document& doc, const Table& table) {
  for (const auto& [key, value] : full_metadata(doc)) {
    out << "# " << key << '=' << cell_csv(value) << "\r\n";
  }
  out << "# table=" << table.name << "\r\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_csv(row[i]);
    out << "\r\n";
  }
}

void write_json(std::ostream& out, const Document& doc) {
  out << "{\n  \"metadata\": {";
  const auto meta = full_metadata(doc);
  for (std::size_t i = 0; i < meta.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << json_string(meta[i].first) << ": "
        << cell_json(meta[i].second);
  }
  out << "\n  },\n  \"tables\": [";
  for (std::size_t t = 0; t < doc.tables.size(); ++t) {
    const auto& table = doc.tables[t];
    out << (t ? ",\n    {" : "\n    {") << "\n      \"name\": " << json_string(table.name)
        << ",\n      \"columns\": [";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? ", " : "") << json_string(table.columns[i]);
    }
    out << "],\n      \"rows\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      out << (r ? ",\n        [" : "\n        [");
      for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
        out << (i ? ", " : "") << cell_json(table.rows[r][i]);
      }
      out << "]";
    }
    out << (table.rows.empty() ? "]" : "\n      ]") << "\n    }";
  }
  out << (doc.tables.empty() ? "]" : "\n  ]") << "\n}\n";
}

std::filesystem::path sibling_path(const std::filesystem::path& primary, const std::string& name) {
  auto p = primary;
  p.replace_filename(primary.stem().string() + "_" + name + primary.extension().string());
  return p;
}

void emit(const Document& doc, const OutputConfig& output, std::ostream& stdout_stream) {
  if (output.format == OutputFormat::Json) {
    if (output.path.empty()) {
      write_json(stdout_stream, doc);
      return;
    }
    std::ofstream out(output.path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + output.path + "'");
    write_json(out, doc);
    if (!out) throw ConfigError("failed writing output file '" + output.path + "'");
    return;
  }
  if (output.path.empty()) {
    for (std::size_t t = 0; t < doc.tables.size(); ++t) {
      if (t) stdout_stream << "\r\n";
      write_csv_table(stdout_stream, doc, doc.tables[t]);
    }
    return;
  }
  for (std::size_t t = 0; t < doc.tables.size(); ++t) {
    const std::filesystem::path path =
        t == 0 ? std::filesystem::path(output.path) : sibling_path(output.path, doc.tables[t].name);
    write_csv_file(path, doc, doc.tables[t]);
  }
}

}  // namespace emission::cli
