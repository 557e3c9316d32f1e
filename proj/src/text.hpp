#pragma once

#include <string>
#include <vector>

namespace gazekit {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Strict double parser; throws std::invalid_argument unless the whole
/// token is consumed.
double parse_double(const std::string& token);

/// Strict non-negative integer parser used for labels and counts.
long parse_long(const std::string& token);

std::vector<std::string> split(const std::string& line, char sep);

/// Whitespace-separated fields; empty result for blank lines.
std::vector<std::string> split_ws(const std::string& line);

std::string trim(const std::string& s);

}  // namespace gazekit
