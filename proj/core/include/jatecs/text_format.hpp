#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jatecs {

// Shortest decimal that parses back to exactly the same double.
std::string format_double(double value);

// Strict numeric parsing: the whole token must be consumed.
std::optional<double> parse_double(std::string_view token);
std::optional<std::uint64_t> parse_uint(std::string_view token);

// TSV field escaping: backslash, tab, LF and CR become \\, \t, \n, \r.
std::string escape_field(std::string_view raw);
std::string unescape_field(std::string_view escaped);

std::vector<std::string_view> split(std::string_view text, char separator);
std::string_view trim(std::string_view text);

// Removes one trailing '\r' so CR-LF input reads like LF input.
inline std::string_view chomp_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace jatecs
