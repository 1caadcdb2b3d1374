#include "lpf/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lpf {

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "jsonl") return Format::jsonl;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (csv | jsonl)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string json_escape(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out + '"';
}

std::string render(const Cell& cell, Format format) {
  return std::visit(
      [format](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          if (format == Format::jsonl && !std::isfinite(v)) return "null";
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return format == Format::csv ? csv_escape(v) : json_escape(v);
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

}  // namespace

TableWriter::TableWriter(std::ostream& out, Format format, std::vector<std::string> columns,
                         const std::vector<std::string>& meta)
    : out_(out), format_(format), columns_(std::move(columns)) {
  for (const auto& text : meta) {
    if (format_ == Format::csv) {
      out_ << "# " << text << '\n';
    } else {
      out_ << "{\"meta\":" << json_escape(text) << "}\n";
    }
  }
  if (format_ != Format::csv) return;
  for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
  out_ << '\n';
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) {
    throw std::logic_error("table row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(columns_.size()));
  }
  if (format_ == Format::csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << render(cells[i], format_);
  } else {
    out_ << '{';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ << (i ? "," : "") << json_escape(columns_[i]) << ':' << render(cells[i], format_);
    }
    out_ << '}';
  }
  out_ << '\n';
}

}  // namespace lpf
