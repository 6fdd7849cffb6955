#pragma once

// Minimal CSV table with exact double round-trip: one header row, comma
// separator, numeric cells printed with 17 significant digits.

#include <filesystem>
#include <string>
#include <vector>

namespace enplab::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // every row has header.size() cells
};

std::string format_cell(double v);  // %.17g

void write(const std::filesystem::path& path, const Table& table);
Table read(const std::filesystem::path& path);  // throws std::runtime_error on malformed input

}  // namespace enplab::csv
