#include "rflight/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace rflight {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  if (s.empty()) throw std::invalid_argument("empty number");
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<double> parse_lengths(std::string_view s) {
  std::vector<double> out;
  if (s.empty()) throw std::invalid_argument("empty length list");
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const auto field = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    for (char c : field)
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        throw std::invalid_argument("whitespace not allowed in length list");
    const double v = parse_double(field);
    if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("lengths must be positive");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

void write_csv_row(std::ostream& os, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format_double(values[i]);
  }
  os << '\n';
}

}  // namespace rflight
