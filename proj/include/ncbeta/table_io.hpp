#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ncbeta {

// One output cell: text, a real number, or an integer count.  Reals are
// rendered in fixed notation at the table's precision, so equal inputs
// always serialize to identical bytes.
using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class OutputFormat { kCsv, kJson };

struct OutputSpec {
  OutputFormat format = OutputFormat::kCsv;
  std::string path = "-";  // "-" means stdout
  int precision = 5;       // fixed decimal places for real cells
};

// Fixed-notation rendering with a stable "-0" cleanup, shared by both
// serializers.
std::string format_double(double v, int precision);

// RFC 4180 serialization: CRLF line endings, header row first, fields quoted
// only when they contain a comma, quote, or line break.
std::string to_csv(const Table& table, int precision);

// Inverse of to_csv for well-formed input; kept here so round-trip identity
// is testable against the writer.
Table parse_csv(const std::string& text);

// One object: {"meta": {...}, "rows": [{col: value, ...}, ...]}.  Real cells
// are emitted as numbers rounded to the table precision; meta carries the
// command, seed, and library version.
std::string to_json(const Table& table, int precision,
                    const std::map<std::string, std::string>& meta,
                    std::uint64_t seed);

// Serializes to spec.path ("-" for stdout) in spec.format.  Files are
// written in binary mode so the CSV line endings survive byte-for-byte.
void write_output(const Table& table, const OutputSpec& spec,
                  const std::map<std::string, std::string>& meta,
                  std::uint64_t seed);

}  // namespace ncbeta
