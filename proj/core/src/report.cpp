#include "ratekit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ratekit/errors.hpp"

namespace ratekit {

Field Field::num(double v) {
  Field f;
  f.kind = Kind::Number;
  f.number = v;
  return f;
}

Field Field::integer_of(long long v) {
  Field f;
  f.kind = Kind::Integer;
  f.integer = v;
  return f;
}

Field Field::flag(bool v) {
  Field f;
  f.kind = Kind::Boolean;
  f.boolean = v;
  return f;
}

Field Field::str(std::string v) {
  Field f;
  f.kind = Kind::Text;
  f.text = std::move(v);
  return f;
}

OutputFormat output_format_from_name(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "human") return OutputFormat::Human;
  throw DomainError("unknown output format '" + name + "'");
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_value(const Field& f) {
  switch (f.kind) {
    case Field::Kind::Number:
      if (!std::isfinite(f.number)) return "null";
      return format_g17(f.number);
    case Field::Kind::Integer:
      return std::to_string(f.integer);
    case Field::Kind::Boolean:
      return f.boolean ? "true" : "false";
    case Field::Kind::Text:
      return "\"" + json_escape(f.text) + "\"";
  }
  return "null";
}

void json_row(std::ostringstream& os, const Row& row) {
  os << "{";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ",";
    os << "\"" << json_escape(row[i].first) << "\":" << json_value(row[i].second);
  }
  os << "}";
}

std::string csv_value(const Field& f) {
  switch (f.kind) {
    case Field::Kind::Number:
      return format_g17(f.number);
    case Field::Kind::Integer:
      return std::to_string(f.integer);
    case Field::Kind::Boolean:
      return f.boolean ? "true" : "false";
    case Field::Kind::Text: {
      if (f.text.find_first_of(",\"\n") == std::string::npos) return f.text;
      std::string quoted = "\"";
      for (char c : f.text) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
      }
      return quoted + "\"";
    }
  }
  return "";
}

std::string human_value(const Field& f) {
  if (f.kind == Field::Kind::Number) return format_g17(f.number);
  return csv_value(f);
}

}  // namespace

std::string render(const Report& report, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json: {
      os << "{\"command\":\"" << json_escape(report.command) << "\",\"config\":";
      json_row(os, report.config);
      os << ",\"cases\":[";
      for (std::size_t i = 0; i < report.cases.size(); ++i) {
        if (i) os << ",";
        json_row(os, report.cases[i]);
      }
      os << "],\"summary\":";
      json_row(os, report.summary);
      os << "}\n";
      break;
    }
    case OutputFormat::Csv: {
      if (!report.cases.empty()) {
        const Row& head = report.cases.front();
        for (std::size_t i = 0; i < head.size(); ++i) {
          if (i) os << ",";
          os << head[i].first;
        }
        os << "\n";
        for (const Row& row : report.cases) {
          for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << csv_value(row[i].second);
          }
          os << "\n";
        }
      }
      break;
    }
    case OutputFormat::Human: {
      os << "# " << report.command << "\n";
      for (const auto& [key, value] : report.config) {
        os << "  " << key << " = " << human_value(value) << "\n";
      }
      for (const Row& row : report.cases) {
        os << "  ";
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) os << "  ";
          os << row[i].first << "=" << human_value(row[i].second);
        }
        os << "\n";
      }
      for (const auto& [key, value] : report.summary) {
        os << key << ": " << human_value(value) << "\n";
      }
      break;
    }
  }
  return os.str();
}

}  // namespace ratekit
