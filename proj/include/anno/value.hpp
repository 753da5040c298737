// value.hpp - Tagged data values and the three column types.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace anno {

enum class ColumnType { Number, String, Temporal };

const char* column_type_name(ColumnType t);
std::optional<ColumnType> column_type_from_name(const std::string& name);

// Instant in time, milliseconds since the Unix epoch, UTC.
struct Temporal {
    std::int64_t ms = 0;
    bool operator==(const Temporal& o) const { return ms == o.ms; }
    bool operator<(const Temporal& o) const { return ms < o.ms; }
};

// A cell value: null, finite number, string, or temporal. NaN/Inf never enter
// a Value; ingestion rejects them.
class Value {
public:
    Value() = default;  // null
    explicit Value(double n) : v_(n) {}
    explicit Value(std::string s) : v_(std::move(s)) {}
    explicit Value(Temporal t) : v_(t) {}

    static Value null() { return Value(); }

    bool is_null() const { return std::holds_alternative<std::monostate>(v_); }
    bool is_number() const { return std::holds_alternative<double>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_temporal() const { return std::holds_alternative<Temporal>(v_); }

    double as_number() const { return std::get<double>(v_); }
    const std::string& as_string() const { return std::get<std::string>(v_); }
    Temporal as_temporal() const { return std::get<Temporal>(v_); }

    bool operator==(const Value& o) const { return v_ == o.v_; }

private:
    std::variant<std::monostate, double, std::string, Temporal> v_;
};

// ISO-8601 parsing/formatting. Accepted input forms (all UTC):
//   YYYY-MM-DD
//   YYYY-MM-DDTHH:MM:SS
//   YYYY-MM-DDTHH:MM:SS.mmm
// with an optional trailing 'Z'. Anything else returns nullopt.
std::optional<std::int64_t> parse_iso8601(const std::string& s);

// Canonical form: YYYY-MM-DDTHH:MM:SSZ, with .mmm inserted when nonzero.
std::string format_iso8601(std::int64_t ms);

// Shortest decimal string that round-trips the double ("1", "2.5", "1e+30").
std::string format_number(double v);

// Fixed-point formatting for output attributes; negative zero is folded to
// plain zero so rounding can't produce "-0.00".
std::string format_fixed(double v, int decimals);

// Canonical text for a value: numbers via format_number, temporals via
// format_iso8601, strings verbatim, null -> "".
std::string value_to_text(const Value& v);

}  // namespace anno
