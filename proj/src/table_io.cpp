#include "ncbeta/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "ncbeta/errors.hpp"
#include "ncbeta/version.hpp"

namespace ncbeta {

std::string format_double(double v, int precision) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  std::string s(buf);
  // normalize "-0.000..." to its unsigned spelling
  if (!s.empty() && s[0] == '-' &&
      s.find_first_not_of("0.", 1) == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

namespace {

std::string render_cell(const Cell& cell, int precision) {
  if (std::holds_alternative<std::string>(cell)) {
    return std::get<std::string>(cell);
  }
  if (std::holds_alternative<double>(cell)) {
    return format_double(std::get<double>(cell), precision);
  }
  return std::to_string(std::get<long long>(cell));
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

void append_row(std::string& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_escape(fields[i]);
  }
  out += "\r\n";
}

}  // namespace

std::string to_csv(const Table& table, int precision) {
  std::string out;
  append_row(out, table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    fields.reserve(row.size());
    for (const Cell& cell : row) fields.push_back(render_cell(cell, precision));
    append_row(out, fields);
  }
  return out;
}

Table parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  size_t i = 0;
  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(record);
    record.clear();
  };

  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field += c;
      ++i;
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
      ++i;
      continue;
    }
    if (c == ',') {
      end_field();
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      end_record();
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      continue;
    }
    field += c;
    field_started = true;
    ++i;
  }
  if (field_started || !record.empty()) end_record();

  if (records.empty()) {
    throw Error("parse_csv: no header row");
  }
  Table table;
  table.columns = records.front();
  for (size_t r = 1; r < records.size(); ++r) {
    std::vector<Cell> row;
    row.reserve(records[r].size());
    for (auto& f : records[r]) row.emplace_back(std::move(f));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string to_json(const Table& table, int precision,
                    const std::map<std::string, std::string>& meta,
                    std::uint64_t seed) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json m;
  for (const auto& [key, value] : meta) m[key] = value;
  m["seed"] = seed;
  m["version"] = kVersion;
  doc["meta"] = m;

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      const Cell& cell = row[c];
      if (std::holds_alternative<std::string>(cell)) {
        obj[table.columns[c]] = std::get<std::string>(cell);
      } else if (std::holds_alternative<double>(cell)) {
        // round through the fixed rendering so CSV and JSON agree digit for
        // digit at the same precision
        obj[table.columns[c]] =
            std::stod(format_double(std::get<double>(cell), precision));
      } else {
        obj[table.columns[c]] = std::get<long long>(cell);
      }
    }
    rows.push_back(obj);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

void write_output(const Table& table, const OutputSpec& spec,
                  const std::map<std::string, std::string>& meta,
                  std::uint64_t seed) {
  std::string payload = spec.format == OutputFormat::kCsv
                            ? to_csv(table, spec.precision)
                            : to_json(table, spec.precision, meta, seed);
  if (spec.path == "-") {
    std::cout.write(payload.data(),
                    static_cast<std::streamsize>(payload.size()));
    std::cout.flush();
    if (!std::cout) throw Error("write_output: stdout write failed");
    return;
  }
  std::ofstream out(spec.path, std::ios::binary);
  if (!out) {
    throw Error("write_output: cannot open " + spec.path);
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.flush();
  if (!out) {
    throw Error("write_output: write to " + spec.path + " failed");
  }
}

}  // namespace ncbeta
