#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oppe/datasets.hpp"

namespace oppe {

/// Parses positive numbers separated by commas or whitespace, any number
/// per line; blank lines are ignored. Throws ParseError naming `source`
/// and the 1-based line for bad tokens or non-positive values, and for an
/// input with no values.
Dataset parse_csv_text(std::string_view text, std::string_view source = "<input>");

/// parse_csv_text on a file's contents. Throws ParseError (line 0) when the
/// file cannot be read.
Dataset parse_csv(const std::filesystem::path& path);

/// Comma-separated list of reals, e.g. "0.5,1,2". Throws ParseError.
std::vector<double> parse_real_list(std::string_view text);
/// Comma-separated list of integers. Throws ParseError.
std::vector<int> parse_int_list(std::string_view text);

/// 17 significant digits, '.' separator, independent of the C locale.
std::string format_double(double value);

/// Joins formatted values with commas.
std::string format_row(std::span<const double> values);

}  // namespace oppe
