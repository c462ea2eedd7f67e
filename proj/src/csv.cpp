#include "oppe/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "oppe/error.hpp"

namespace oppe {

namespace {

bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';';
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, std::string_view what) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    T value{};
    if (!parse_number(token, value)) {
      throw ParseError("invalid " + std::string(what) + " '" + std::string(token) + "'", 0);
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Dataset parse_csv_text(std::string_view text, std::string_view source) {
  Dataset data;
  data.name = std::string(source);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    ++line_no;
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    const std::string_view line = text.substr(start, stop - start);
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_separator(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_separator(line[j])) ++j;
      if (j > i) {
        const std::string_view token = line.substr(i, j - i);
        double value = 0.0;
        const std::string where =
            std::string(source) + ":" + std::to_string(line_no) + ": ";
        if (!parse_number(token, value) || !std::isfinite(value)) {
          throw ParseError(where + "not a number: '" + std::string(token) + "'", line_no);
        }
        if (!(value > 0.0)) {
          throw ParseError(where + "value must be positive: '" + std::string(token) + "'",
                           line_no);
        }
        data.values.push_back(value);
      }
      i = j;
    }
    start = stop + 1;
  }
  if (data.values.empty()) {
    throw ParseError(std::string(source) + ": no values", 0);
  }
  return data;
}

Dataset parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv_text(buffer.str(), path.string());
}

std::vector<double> parse_real_list(std::string_view text) {
  return parse_list<double>(text, "number");
}

std::vector<int> parse_int_list(std::string_view text) {
  return parse_list<int>(text, "integer");
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, ptr);
}

std::string format_row(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace oppe
