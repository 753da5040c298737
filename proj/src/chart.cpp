// chart.cpp - scale inference, band arithmetic, tick-step rule, margins.
#include "anno/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anno {

// ---------------------------------------------------------------- enums --

const char* mark_type_name(MarkType m) {
    switch (m) {
    case MarkType::Bar: return "bar";
    case MarkType::Line: return "line";
    case MarkType::Point: return "point";
    case MarkType::Area: return "area";
    }
    return "?";
}

std::optional<MarkType> mark_type_from_name(const std::string& s) {
    if (s == "bar") return MarkType::Bar;
    if (s == "line") return MarkType::Line;
    if (s == "point") return MarkType::Point;
    if (s == "area") return MarkType::Area;
    return std::nullopt;
}

const char* encoding_type_name(EncodingType t) {
    switch (t) {
    case EncodingType::Quantitative: return "quantitative";
    case EncodingType::Nominal: return "nominal";
    case EncodingType::Ordinal: return "ordinal";
    case EncodingType::Temporal: return "temporal";
    }
    return "?";
}

std::optional<EncodingType> encoding_type_from_name(const std::string& s) {
    if (s == "quantitative") return EncodingType::Quantitative;
    if (s == "nominal") return EncodingType::Nominal;
    if (s == "ordinal") return EncodingType::Ordinal;
    if (s == "temporal") return EncodingType::Temporal;
    return std::nullopt;
}

const char* channel_name(Channel c) {
    switch (c) {
    case Channel::X: return "x";
    case Channel::Y: return "y";
    case Channel::Color: return "color";
    }
    return "?";
}

const char* chart_part_name(ChartPartKind p) {
    switch (p) {
    case ChartPartKind::Title: return "title";
    case ChartPartKind::Legend: return "legend";
    case ChartPartKind::Subtitle: return "subtitle";
    case ChartPartKind::Caption: return "caption";
    }
    return "?";
}

std::optional<ChartPartKind> chart_part_from_name(const std::string& s) {
    if (s == "title") return ChartPartKind::Title;
    if (s == "legend") return ChartPartKind::Legend;
    if (s == "subtitle") return ChartPartKind::Subtitle;
    if (s == "caption") return ChartPartKind::Caption;
    return std::nullopt;
}

// --------------------------------------------------------------- layout --

Rect plot_area(const ChartSpec& spec) {
    double right = Margins::right + (spec.has(Channel::Color) ? Margins::legend_extra : 0.0);
    return Rect{Margins::left, Margins::top,
                static_cast<double>(spec.width) - Margins::left - right,
                static_cast<double>(spec.height) - Margins::top - Margins::bottom};
}

// ---------------------------------------------------------------- scale --

double Scale::band_step() const {
    return (r1 - r0) / static_cast<double>(categories.size());
}

double Scale::band_start(std::size_t i) const {
    double step = band_step();
    return r0 + step * static_cast<double>(i) + step * band_padding;
}

double Scale::band_width() const {
    return band_step() * (1.0 - band_padding);
}

double Scale::band_center(std::size_t i) const {
    return band_start(i) + band_width() / 2.0;
}

std::optional<std::size_t> Scale::category_index(const std::string& cat) const {
    for (std::size_t i = 0; i < categories.size(); ++i)
        if (categories[i] == cat) return i;
    return std::nullopt;
}

double Scale::apply_continuous(double v) const {
    return r0 + (v - d0) / (d1 - d0) * (r1 - r0);
}

double scale_apply(const Scale& scale, const Value& v) {
    switch (scale.kind) {
    case Scale::Kind::Linear:
        if (!v.is_number())
            fail("DomainMiss", "", "linear scale expects a number, got " + value_to_text(v));
        return scale.apply_continuous(v.as_number());
    case Scale::Kind::Time: {
        if (v.is_temporal())
            return scale.apply_continuous(static_cast<double>(v.as_temporal().ms));
        if (v.is_string()) {
            if (auto ms = parse_iso8601(v.as_string()))
                return scale.apply_continuous(static_cast<double>(*ms));
        }
        fail("DomainMiss", "", "time scale expects a temporal value, got " + value_to_text(v));
    }
    case Scale::Kind::Band:
    case Scale::Kind::PointOrdinal: {
        if (v.is_null())
            fail("DomainMiss", "", "null value has no position on a categorical scale");
        std::string cat = value_to_text(v);
        auto idx = scale.category_index(cat);
        if (!idx)
            fail("DomainMiss", "", "'" + cat + "' is not in the scale domain");
        return scale.band_center(*idx);
    }
    }
    fail("DomainMiss", "", "unreachable scale kind");
}

double scale_apply_checked(const Scale& scale, const Value& v) {
    if (scale.is_continuous()) {
        double x = 0;
        if (v.is_number()) {
            x = v.as_number();
        } else if (scale.kind == Scale::Kind::Time) {
            if (v.is_temporal()) x = static_cast<double>(v.as_temporal().ms);
            else if (v.is_string() && parse_iso8601(v.as_string()))
                x = static_cast<double>(*parse_iso8601(v.as_string()));
            else fail("DomainMiss", "", "time scale expects a temporal value");
        } else {
            fail("DomainMiss", "", "linear scale expects a number, got " + value_to_text(v));
        }
        double slack = (scale.d1 - scale.d0) * 1e-9;
        if (x < scale.d0 - slack || x > scale.d1 + slack)
            fail("DomainMiss", "",
                 value_to_text(v) + " lies outside the scale domain [" +
                     format_number(scale.d0) + ", " + format_number(scale.d1) + "]");
    }
    return scale_apply(scale, v);
}

// ---------------------------------------------------------- tick steps --

double nice_floor(double v, double step) {
    double q = v / step;
    double f = std::floor(q);
    if (q - f > 1.0 - 1e-9) f += 1.0;  // q was a multiple up to float noise
    return f * step;
}

double nice_ceil(double v, double step) {
    double q = v / step;
    double c = std::ceil(q);
    if (c - q > 1.0 - 1e-9) c -= 1.0;
    return c * step;
}

// Number of step multiples inside [lo, hi].
static long ticks_in(double lo, double hi, double step) {
    double first = nice_ceil(lo, step);
    double last = nice_floor(hi, step);
    if (first > last) return 0;
    return static_cast<long>(std::llround((last - first) / step)) + 1;
}

TickStep choose_tick_step_parts(double lo, double hi, int target) {
    double span = hi - lo;
    int k0 = static_cast<int>(std::floor(std::log10(span))) - 2;
    TickStep best{std::pow(10.0, k0), 1, k0};
    long best_diff = std::numeric_limits<long>::max();
    static const long mantissas[] = {1, 2, 5};
    for (int k = k0; k <= k0 + 4; ++k) {
        for (long m : mantissas) {
            double step = static_cast<double>(m) * std::pow(10.0, k);
            long diff = std::labs(ticks_in(lo, hi, step) - static_cast<long>(target));
            if (diff <= best_diff) {  // ties prefer the larger step
                best_diff = diff;
                best = TickStep{step, m, k};
            }
        }
    }
    return best;
}

double choose_tick_step(double lo, double hi, int target) {
    return choose_tick_step_parts(lo, hi, target).step;
}

// ------------------------------------------------------------ inference --

void validate_encodings(const ChartSpec& spec, const DataTable& data, const std::string& doc_path) {
    if (!spec.has(Channel::X) || !spec.has(Channel::Y))
        fail("SchemaError", doc_path + "/encodings", "chart requires both x and y encodings");
    for (const auto& [ch, enc] : spec.encodings) {
        std::string path = doc_path + "/encodings/" + channel_name(ch);
        auto idx = data.column_index(enc.field);
        if (!idx)
            fail("UnknownField", path + "/field", "column '" + enc.field + "' not found in data");
        ColumnType col = data.column(*idx).type;
        if (enc.type == EncodingType::Quantitative && col != ColumnType::Number)
            fail("TypeError", path,
                 "quantitative encoding requires a number column; '" + enc.field + "' is " +
                     column_type_name(col));
        if (enc.type == EncodingType::Temporal && col != ColumnType::Temporal)
            fail("TypeError", path,
                 "temporal encoding requires a temporal column; '" + enc.field + "' is " +
                     column_type_name(col));
    }
    if (spec.has(Channel::Color)) {
        EncodingType t = spec.encoding(Channel::Color).type;
        if (t != EncodingType::Nominal && t != EncodingType::Ordinal)
            fail("SchemaError", doc_path + "/encodings/color",
                 "color encoding must be nominal or ordinal");
    }
    if (spec.mark == MarkType::Bar) {
        EncodingType xt = spec.encoding(Channel::X).type;
        EncodingType yt = spec.encoding(Channel::Y).type;
        bool x_cat = xt == EncodingType::Nominal || xt == EncodingType::Ordinal;
        if (!x_cat || yt != EncodingType::Quantitative)
            fail("SchemaError", doc_path + "/mark",
                 "bar charts require a nominal or ordinal x encoding and a quantitative y "
                 "encoding");
    }
}

// Distinct category labels: nominal keeps first-occurrence order, ordinal
// sorts ascending in the column's native type.
static std::vector<std::string> gather_categories(const DataTable& data, std::size_t col,
                                                  bool ordinal) {
    std::vector<Value> raw;
    for (std::size_t r = 0; r < data.row_count(); ++r) {
        const Value& v = data.at(r, col);
        if (v.is_null()) continue;
        bool seen = false;
        for (const Value& u : raw)
            if (u == v) { seen = true; break; }
        if (!seen) raw.push_back(v);
    }
    if (ordinal) {
        std::sort(raw.begin(), raw.end(), [](const Value& a, const Value& b) {
            if (a.is_number() && b.is_number()) return a.as_number() < b.as_number();
            if (a.is_temporal() && b.is_temporal()) return a.as_temporal().ms < b.as_temporal().ms;
            return value_to_text(a) < value_to_text(b);
        });
    }
    std::vector<std::string> out;
    out.reserve(raw.size());
    for (const Value& v : raw) out.push_back(value_to_text(v));
    return out;
}

static Scale infer_one(const ChartSpec& spec, const DataTable& data, Channel ch,
                       const Encoding& enc, const Rect& plot) {
    std::string path = std::string("chart/encodings/") + channel_name(ch);
    std::size_t col = *data.column_index(enc.field);
    Scale s;

    if (enc.type == EncodingType::Quantitative || enc.type == EncodingType::Temporal) {
        s.kind = enc.type == EncodingType::Temporal ? Scale::Kind::Time : Scale::Kind::Linear;
        double lo = 0, hi = 0;
        bool explicit_domain = false;
        if (enc.scale_domain) {
            const auto& dom = *enc.scale_domain;
            if (dom.size() != 2)
                fail("SchemaError", path + "/scale/domain",
                     "continuous domain must be a [min, max] pair");
            auto as_endpoint = [&](const Value& v) -> double {
                if (s.kind == Scale::Kind::Linear && v.is_number()) return v.as_number();
                if (s.kind == Scale::Kind::Time) {
                    if (v.is_temporal()) return static_cast<double>(v.as_temporal().ms);
                    if (v.is_string())
                        if (auto ms = parse_iso8601(v.as_string()))
                            return static_cast<double>(*ms);
                }
                fail("SchemaError", path + "/scale/domain",
                     "domain endpoint has the wrong type: " + value_to_text(v));
            };
            lo = as_endpoint(dom[0]);
            hi = as_endpoint(dom[1]);
            if (lo > hi)
                fail("SchemaError", path + "/scale/domain", "domain min must not exceed max");
            explicit_domain = true;
        } else {
            bool any = false;
            for (std::size_t r = 0; r < data.row_count(); ++r) {
                const Value& v = data.at(r, col);
                if (v.is_null()) continue;
                double d = v.is_temporal() ? static_cast<double>(v.as_temporal().ms)
                                           : v.as_number();
                if (!any) { lo = hi = d; any = true; }
                else { lo = std::min(lo, d); hi = std::max(hi, d); }
            }
            if (!any)
                fail("EmptyDomain", path,
                     "no usable values in column '" + enc.field + "' and no explicit domain");
            if (spec.mark == MarkType::Bar && enc.type == EncodingType::Quantitative) {
                lo = std::min(lo, 0.0);
                hi = std::max(hi, 0.0);
            }
        }
        if (lo == hi) { lo -= 1; hi += 1; }  // constant data: pad by one unit
        if (!explicit_domain) {
            double step = choose_tick_step(lo, hi, kDefaultTickTarget);
            lo = nice_floor(lo, step);
            hi = nice_ceil(hi, step);
        }
        s.d0 = lo;
        s.d1 = hi;
    } else {
        bool banded = spec.mark == MarkType::Bar && ch != Channel::Color;
        s.kind = banded ? Scale::Kind::Band : Scale::Kind::PointOrdinal;
        s.band_padding = banded ? 0.1 : 0.0;
        if (enc.scale_domain) {
            for (const Value& v : *enc.scale_domain) {
                std::string cat = value_to_text(v);
                if (std::find(s.categories.begin(), s.categories.end(), cat) !=
                    s.categories.end())
                    fail("SchemaError", path + "/scale/domain",
                         "duplicate category '" + cat + "' in domain");
                s.categories.push_back(cat);
            }
        } else {
            s.categories = gather_categories(data, col, enc.type == EncodingType::Ordinal);
        }
        if (s.categories.empty())
            fail("EmptyDomain", path,
                 "no usable values in column '" + enc.field + "' and no explicit domain");
    }

    // Pixel ranges. Categorical y runs top-down (first category at top);
    // continuous y is inverted so domain-min maps to the plot bottom.
    switch (ch) {
    case Channel::X:
        s.r0 = plot.x;
        s.r1 = plot.right();
        break;
    case Channel::Y:
        if (s.is_continuous()) { s.r0 = plot.bottom(); s.r1 = plot.y; }
        else { s.r0 = plot.y; s.r1 = plot.bottom(); }
        break;
    case Channel::Color:
        s.r0 = 0;
        s.r1 = 1;
        break;
    }
    return s;
}

std::map<Channel, Scale> infer_scales(const ChartSpec& spec, const DataTable& data) {
    Rect plot = plot_area(spec);
    if (plot.w <= 0 || plot.h <= 0)
        fail("SchemaError", "chart", "chart size leaves no plot area inside the margins");
    std::map<Channel, Scale> out;
    for (const auto& [ch, enc] : spec.encodings)
        out.emplace(ch, infer_one(spec, data, ch, enc, plot));
    return out;
}

}  // namespace anno
