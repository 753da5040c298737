#include "anno/value.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace anno {

const char* column_type_name(ColumnType t) {
    switch (t) {
        case ColumnType::Number: return "number";
        case ColumnType::String: return "string";
        case ColumnType::Temporal: return "temporal";
    }
    return "?";
}

std::optional<ColumnType> column_type_from_name(const std::string& name) {
    if (name == "number") return ColumnType::Number;
    if (name == "string") return ColumnType::String;
    if (name == "temporal") return ColumnType::Temporal;
    return std::nullopt;
}

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool is_leap(std::int64_t y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr std::array<unsigned, 12> k = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return k[m - 1];
}

bool read_digits(const std::string& s, size_t pos, size_t n, int& out) {
    if (pos + n > s.size()) return false;
    int v = 0;
    for (size_t i = 0; i < n; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(const std::string& s) {
    int year, month, day;
    if (!read_digits(s, 0, 4, year)) return std::nullopt;
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!read_digits(s, 5, 2, month) || !read_digits(s, 8, 2, day)) return std::nullopt;
    if (month < 1 || month > 12) return std::nullopt;
    if (day < 1 || static_cast<unsigned>(day) > days_in_month(year, static_cast<unsigned>(month)))
        return std::nullopt;

    size_t pos = 10;
    int hour = 0, minute = 0, second = 0, millis = 0;
    if (pos < s.size() && s[pos] == 'T') {
        if (s.size() < pos + 9 || s[pos + 3] != ':' || s[pos + 6] != ':') return std::nullopt;
        if (!read_digits(s, pos + 1, 2, hour) || !read_digits(s, pos + 4, 2, minute) ||
            !read_digits(s, pos + 7, 2, second))
            return std::nullopt;
        if (hour > 23 || minute > 59 || second > 59) return std::nullopt;
        pos += 9;
        if (pos < s.size() && s[pos] == '.') {
            if (!read_digits(s, pos + 1, 3, millis)) return std::nullopt;
            pos += 4;
        }
    }
    if (pos < s.size() && s[pos] == 'Z') ++pos;
    if (pos != s.size()) return std::nullopt;

    std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    return ((days * 24 + hour) * 60 + minute) * 60000 + second * 1000 + millis;
}

std::string format_iso8601(std::int64_t ms) {
    std::int64_t days = ms / 86400000;
    std::int64_t rem = ms % 86400000;
    if (rem < 0) {
        rem += 86400000;
        days -= 1;
    }
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    int hour = static_cast<int>(rem / 3600000);
    int minute = static_cast<int>(rem / 60000 % 60);
    int second = static_cast<int>(rem / 1000 % 60);
    int millis = static_cast<int>(rem % 1000);

    char buf[40];
    if (millis != 0) {
        std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%03dZ",
                      static_cast<long long>(y), m, d, hour, minute, second, millis);
    } else {
        std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02dZ",
                      static_cast<long long>(y), m, d, hour, minute, second);
    }
    return buf;
}

std::string format_number(double v) {
    if (v == 0.0) return "0";  // normalizes -0
    char buf[64];
    auto round_trips = [&](double orig) {
        double back = 0.0;
        auto res = std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
        return res.ec == std::errc() && back == orig;
    };
    // Ordinary magnitudes: shortest plain-decimal form that round-trips.
    // (The first length that round-trips never has trailing zeros: stripping
    // one would itself round-trip one step earlier.)
    double a = std::abs(v);
    if (std::isfinite(v) && a >= 1e-4 && a < 1e15) {
        for (int dec = 0; dec <= 20; ++dec) {
            std::snprintf(buf, sizeof(buf), "%.*f", dec, v);
            if (round_trips(v)) return buf;
        }
    }
    // Extremes: shortest %g (scientific) form.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (round_trips(v)) break;
    }
    return buf;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s = buf;
    if (s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos)
        s.erase(0, 1);  // "-0.00" -> "0.00"
    return s;
}

std::string value_to_text(const Value& v) {
    if (v.is_null()) return "";
    if (v.is_number()) return format_number(v.as_number());
    if (v.is_temporal()) return format_iso8601(v.as_temporal().ms);
    return v.as_string();
}

}  // namespace anno
