#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace serre {

/// 17 significant digits; parse_double(format_double(v)) == v for finite v.
std::string format_double(double value);

/// Shortest text that parses back to the same value ("0.1", "30").
std::string format_short(double value);

/// Full-string parse. Returns false on trailing garbage or an empty field.
bool parse_double(std::string_view text, double& value);

std::vector<std::string_view> split_csv_line(std::string_view line);

}  // namespace serre
