#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace aisrec {

// Shortest decimal form that parses back to exactly the same double.
// Exports rely on this for byte-identical round trips.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);
std::optional<std::uint64_t> parse_uint(std::string_view text);

// p-value rendered for table output: four significant digits, rounded up
// so the printed figure is an upper bound on the computed value.
std::string format_p_upper(double p);

}  // namespace aisrec
