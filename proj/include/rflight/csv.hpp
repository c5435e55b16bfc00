#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rflight {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double x);

/// Whole-string parse; throws std::invalid_argument on trailing garbage.
double parse_double(std::string_view s);

/// "1,0.5,2": comma-separated positive decimals, no whitespace, no empty fields.
std::vector<double> parse_lengths(std::string_view s);

/// Splits one CSV line on commas (no quoting; numeric tables only).
std::vector<std::string> split_csv_line(std::string_view line);

void write_csv_row(std::ostream& os, const std::vector<double>& values);

}  // namespace rflight
