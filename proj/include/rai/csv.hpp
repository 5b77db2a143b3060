#pragma once

#include <string>
#include <vector>

namespace rai {

// Minimal RFC-4180-style CSV: header row required, UTF-8, fields quoted only
// when they contain a comma, quote, or newline.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // 1-based file line of each data row (header is line 1).
    std::vector<int> line_numbers;
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

std::string csv_escape(const std::string& field);

// Shortest round-trip decimal representation.
std::string format_double(double v);

// Round half away from zero to `decimals` places.
double round_half_away(double v, int decimals);

}  // namespace rai
