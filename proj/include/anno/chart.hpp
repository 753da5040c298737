// chart.hpp - Minimal grammar-of-graphics chart model: marks, encodings,
// scales, and the fixed margin layout.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anno/data_table.hpp"
#include "anno/diagnostics.hpp"
#include "anno/geometry.hpp"
#include "anno/value.hpp"

namespace anno {

enum class MarkType { Bar, Line, Point, Area };
enum class EncodingType { Quantitative, Nominal, Ordinal, Temporal };
enum class Channel { X, Y, Color };
enum class ChartPartKind { Title, Legend, Subtitle, Caption };

const char* mark_type_name(MarkType m);
std::optional<MarkType> mark_type_from_name(const std::string& s);
const char* encoding_type_name(EncodingType t);
std::optional<EncodingType> encoding_type_from_name(const std::string& s);
const char* channel_name(Channel c);
const char* chart_part_name(ChartPartKind p);
std::optional<ChartPartKind> chart_part_from_name(const std::string& s);

struct Encoding {
    std::string field;
    EncodingType type = EncodingType::Quantitative;
    // Explicit scale domain: [min, max] values for quantitative/temporal,
    // category list for nominal/ordinal.
    std::optional<std::vector<Value>> scale_domain;
};

struct ChartSpec {
    MarkType mark = MarkType::Point;
    std::map<Channel, Encoding> encodings;  // x and y required, color optional
    int width = 0;
    int height = 0;
    std::optional<std::string> title;
    std::optional<std::string> subtitle;
    std::optional<std::string> caption;

    const Encoding& encoding(Channel c) const { return encodings.at(c); }
    bool has(Channel c) const { return encodings.count(c) != 0; }
};

// Fixed margins; the right margin widens when a legend is present.
struct Margins {
    static constexpr double top = 40;
    static constexpr double right = 20;
    static constexpr double legend_extra = 80;
    static constexpr double bottom = 40;
    static constexpr double left = 50;
};

Rect plot_area(const ChartSpec& spec);

struct Scale {
    enum class Kind { Linear, Band, PointOrdinal, Time };

    Kind kind = Kind::Linear;
    // Linear/Time domain endpoints (Time in epoch ms). d0 < d1 always; a
    // constant domain is padded by +/-1 unit at inference.
    double d0 = 0.0;
    double d1 = 1.0;
    std::vector<std::string> categories;  // Band/PointOrdinal domain, in order
    double r0 = 0.0;  // range start (maps d0 / first category)
    double r1 = 1.0;
    double band_padding = 0.1;

    bool is_continuous() const { return kind == Kind::Linear || kind == Kind::Time; }

    // Band layout: step = range/n, a leading gap of step*padding precedes
    // each band, band width = step*(1-padding).
    double band_step() const;
    double band_start(std::size_t i) const;
    double band_width() const;
    double band_center(std::size_t i) const;

    std::optional<std::size_t> category_index(const std::string& cat) const;
    double apply_continuous(double v) const;
};

// Scale inference:
//   quantitative -> linear; the domain covers the data (bars additionally
//     include 0) and is then widened to tick-step multiples
//   nominal/ordinal -> band for bar marks, point-ordinal otherwise; ordinal
//     domains sort ascending, nominal domains keep first-occurrence order
//   temporal -> time (linear over epoch ms, same nice-ing)
// Color is inferred as a category list when nominal/ordinal.
// EmptyDomain when the table has no usable rows and no explicit domain.
std::map<Channel, Scale> infer_scales(const ChartSpec& spec, const DataTable& data);

// Maps a value through a scale. Band/point scales return the band center;
// unknown categories raise DomainMiss. Continuous scales extrapolate
// outside their domain (fixed-position lookups bounds-check separately).
double scale_apply(const Scale& scale, const Value& v);

// scale_apply plus a domain bounds check on continuous scales: values
// outside [d0, d1] raise DomainMiss instead of extrapolating. Used for row
// projection and fixed data-space coordinates.
double scale_apply_checked(const Scale& scale, const Value& v);

// Validates encodings against the table: fields must exist, quantitative
// binds number columns, temporal binds temporal columns. `doc_path` roots
// the diagnostic paths.
void validate_encodings(const ChartSpec& spec, const DataTable& data, const std::string& doc_path);

// Tick step rule shared by nice-ing and tick generation: candidate steps
// {1,2,5}*10^k, choose the one whose tick count is closest to `target`
// (ties prefer the larger step). The decomposed form lets tick values be
// computed as exact decimals (mantissa*i scaled by 10^exp10) instead of
// accumulating float error.
struct TickStep {
    double step = 1;
    long mantissa = 1;  // 1, 2, or 5
    int exp10 = 0;
};
TickStep choose_tick_step_parts(double lo, double hi, int target);
double choose_tick_step(double lo, double hi, int target);

// Default tick target used when inferring scales and building axes.
inline constexpr int kDefaultTickTarget = 5;

// Round v outward to a multiple of step, absorbing float noise so a value
// already sitting on a multiple stays put.
double nice_floor(double v, double step);
double nice_ceil(double v, double step);

}  // namespace anno
