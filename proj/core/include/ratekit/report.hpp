#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ratekit {

// One typed cell of a report row. Numbers are rendered with %.17g so JSON
// and CSV output round-trips to full double precision and is byte-stable.
struct Field {
  enum class Kind { Number, Integer, Boolean, Text };
  Kind kind = Kind::Text;
  double number = 0.0;
  long long integer = 0;
  bool boolean = false;
  std::string text;

  static Field num(double v);
  static Field integer_of(long long v);
  static Field flag(bool v);
  static Field str(std::string v);
};

using Row = std::vector<std::pair<std::string, Field>>;

// The machine-readable report emitted by the CLI:
//   { "command": ..., "config": {...}, "cases": [...], "summary": {...} }
struct Report {
  std::string command;
  Row config;
  std::vector<Row> cases;
  Row summary;
};

enum class OutputFormat { Json, Csv, Human };

OutputFormat output_format_from_name(const std::string& name);

std::string format_g17(double v);

// JSON renders the whole document; CSV renders the case rows (header +
// one line per case); Human is an aligned key:value listing.
std::string render(const Report& report, OutputFormat format);

}  // namespace ratekit
