#pragma once

// Row-oriented CSV / JSON-lines emission. Doubles are written with 17
// significant digits so every value round-trips exactly.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lpf {

enum class Format { csv, jsonl };

Format parse_format(std::string_view name);

using Cell = std::variant<std::uint64_t, std::int64_t, double, bool, std::string>;

std::string format_double(double v);

class TableWriter {
 public:
  /// Writes the metadata lines ("# text" in CSV, {"meta":"text"} in JSON
  /// lines) and then the CSV header.
  TableWriter(std::ostream& out, Format format, std::vector<std::string> columns,
              const std::vector<std::string>& meta = {});

  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
};

}  // namespace lpf
