// spec.hpp - The combined chart + annotation specification: document
// parsing with path-annotated diagnostics, defaulting, and canonical
// serialization.
//
// Envelope (one JSON object):
//   {
//     "chart":       { mark, encodings, width, height, title?, ... },
//     "data":        { "url": "rel/path.csv" } | { "values": [ {...}, ... ] },
//     "annotations": [ AnnotationRoot, ... ],
//     "ensembles":   [ Ensemble, ... ]          // optional
//   }
//
// An AnnotationRoot pairs a target list with at most one effect per type:
//   { "targets": [ Target, ... ],
//     "text"?:      { "content", "position"?, "id"?, "style"? },
//     "enclosure"?: { "shape"?, "padding"?, "position"?, "id"?, "style"? },
//     "connector"?: { "markers"?, "interpolation"?, "path"?, "id"?, "style"? },
//     "indicator"?: { "kind", "expr", "id"?, "style"? } }
//
// Target forms: {"id": "..."} | {"fixed": {"space","x","y"}} |
//   {"chartPart": "title"} | {"dataPoint": {"expression"} | {"indices"}} |
//   {"axis": {"axis","parts"?,"range"?}} | "none"
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "anno/chart.hpp"
#include "anno/data_table.hpp"
#include "anno/expr.hpp"
#include "anno/scene.hpp"

namespace anno {

// ------------------------------------------------------------- positions --

struct FixedPos {
    enum class Space { Data, Pixel };
    Space space = Space::Pixel;
    Value x;  // number, or a string for band/time data coords
    Value y;
};

enum class Anchor1D { Auto, Start, Mid, End };
enum class Anchor2D { Auto, UpLeft, Up, UpRight, MidLeft, MidRight, DownLeft, Down, DownRight };

const char* anchor1d_name(Anchor1D a);
const char* anchor2d_name(Anchor2D a);
std::optional<Anchor1D> anchor1d_from_name(const std::string& s);
std::optional<Anchor2D> anchor2d_from_name(const std::string& s);

struct Position {
    enum class Kind { Fixed, Along, Anchor };  // Along = 1D, Anchor = 2D
    Kind kind = Kind::Anchor;
    FixedPos fixed;
    Anchor1D along = Anchor1D::Auto;
    Anchor2D anchor = Anchor2D::Auto;
    double dx = 0;
    double dy = 0;
};

// --------------------------------------------------------------- targets --

struct Target {
    enum class Kind { ById, Fixed, ChartPart, DataPoint, Axis, None };
    Kind kind = Kind::None;

    std::string id;  // ById

    FixedPos fixed;  // Fixed

    ChartPartKind part = ChartPartKind::Title;  // ChartPart

    // DataPoint: exactly one of expression / indices.
    std::optional<std::string> expr_src;
    ExprPtr expr;  // parsed against the data schema
    std::vector<std::size_t> indices;

    // Axis.
    Channel axis = Channel::X;
    std::vector<AxisPartKind> parts;  // defaulted to all four when omitted
    std::optional<std::pair<Value, Value>> range_pair;
    std::optional<std::string> range_expr_src;
    ExprPtr range_expr;  // over the synthetic schema {value}
};

// ----------------------------------------------------------------- style --

struct Style {
    std::string stroke = "#333333";
    double stroke_width = 1;
    std::string fill = "none";
    double opacity = 1;
    double font_size = 11;
    std::string font_weight = "normal";  // normal | bold
    std::string text_anchor = "start";   // start | middle | end
    std::optional<std::vector<double>> dash;
};

// --------------------------------------------------------------- effects --

struct EffectCommon {
    std::string id;  // explicit or auto "anno/<n>/<type>"
    Style style;
};

struct TextEffect : EffectCommon {
    std::string content;
    std::optional<Position> position;
};

struct EnclosureEffect : EffectCommon {
    enum class Shape { Rect, Ellipse, SvgPath };
    Shape shape = Shape::Rect;
    std::string path_d;  // SvgPath only
    std::optional<Position> position;
    double padding = 4;
};

struct ConnectorEffect : EffectCommon {
    enum class Markers { None, ArrowStart, ArrowEnd, ArrowBoth };
    enum class Interp { Linear, CatmullRom, Stepwise };
    Markers markers = Markers::None;
    Interp interpolation = Interp::Linear;
    std::optional<std::string> path_override;
};

struct IndicatorEffect : EffectCommon {
    enum class Kind { Line, Area, Arrow };
    Kind kind = Kind::Line;
    std::string expr_src;  // line/arrow: the level
    ExprPtr expr;
    std::optional<std::string> expr2_src;  // area: [lo, hi]
    ExprPtr expr2;
};

struct AnnotationRoot {
    std::vector<Target> targets;
    std::optional<TextEffect> text;
    std::optional<EnclosureEffect> enclosure;
    std::optional<ConnectorEffect> connector;
    std::optional<IndicatorEffect> indicator;
};

// -------------------------------------------------------------- ensembles --

struct Ensemble {
    enum class Kind { Reference, Composite };
    Kind kind = Kind::Reference;
    std::string from_id;  // Reference
    std::string to_id;
    std::string id;  // Composite
    std::vector<std::string> members;
};

// ------------------------------------------------------------------ spec --

struct Spec {
    ChartSpec chart;
    std::optional<std::string> data_url;
    std::string inline_values;  // canonical JSON text of "values" (empty when url)
    std::vector<AnnotationRoot> annotations;
    std::vector<Ensemble> ensembles;
};

// Parses JSON text, rejecting duplicate object keys everywhere: a duplicate
// effect key inside an annotation root is MultipleEffectsOfType, any other
// duplicate is SchemaError. Malformed JSON raises SyntaxError.
nlohmann::json parse_document(const std::string& text);

// Loads the envelope's data block. `base_dir` anchors relative urls;
// `override_path` (CLI --data) wins over the spec's url.
DataTable load_spec_data(const nlohmann::json& doc, const std::string& base_dir,
                         const std::optional<std::string>& override_path);

// Full validation of chart + annotations + ensembles against the data.
// Unknown keys, wrong shapes -> SchemaError; duplicate explicit ids ->
// DuplicateId; empty target lists -> EmptyTargets. Expressions are parsed
// and type-checked here.
Spec parse_spec(const nlohmann::json& doc, const DataTable& data);

// Canonical JSON (sorted keys, all defaults materialized, 2-space indent).
// parse(serialize(s)) == s structurally, and serialization is a fixpoint:
// serialize(parse(serialize(s))) is byte-identical.
std::string serialize_spec(const Spec& s);

// Structural equality via canonical serialization.
bool spec_equal(const Spec& a, const Spec& b);

}  // namespace anno
