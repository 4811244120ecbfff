#include "aisrec/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace aisrec {

std::string format_double(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

std::optional<double> parse_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_uint(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

std::string format_p_upper(double p) {
    if (!(p > 0.0)) return "0";
    if (p >= 1.0) return "1";
    int exp10 = static_cast<int>(std::floor(std::log10(p)));
    // Four significant digits, rounded up.
    long double digits = std::ceil(static_cast<long double>(p) * powl(10.0L, 3 - exp10));
    if (digits >= 10000.0L) {
        digits = 1000.0L;
        ++exp10;
    }
    const auto d = static_cast<long long>(digits);  // in [1000, 9999]
    char buf[48];
    if (exp10 >= -4 && exp10 <= 3) {
        const double shown = static_cast<double>(d) * std::pow(10.0, exp10 - 3);
        std::snprintf(buf, sizeof(buf), "%.*f", exp10 >= 3 ? 0 : 3 - exp10, shown);
    } else {
        std::snprintf(buf, sizeof(buf), "%lld.%03llde%+03d", d / 1000, d % 1000, exp10);
    }
    return buf;
}

}  // namespace aisrec
