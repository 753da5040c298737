// scene.hpp - Pixel-space scene graph: the chart compiled into a tree of
// semantically tagged, bounding-boxed nodes that the annotation layer reads.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "anno/chart.hpp"
#include "anno/data_table.hpp"
#include "anno/diagnostics.hpp"
#include "anno/geometry.hpp"
#include "anno/value.hpp"

namespace anno {

// ------------------------------------------------------------------ tags --

enum class AxisPartKind { Label, Tick, Grid, TickLabel };

const char* axis_part_name(AxisPartKind p);
std::optional<AxisPartKind> axis_part_from_name(const std::string& s);

struct MarkTag {
    std::size_t row = 0;  // original row index in the bound table
};
struct AxisTag {
    Channel axis = Channel::X;  // X or Y only
    AxisPartKind part = AxisPartKind::Tick;
    Value value;  // tick/grid/tick-label value; null for the axis label
};
struct ChartPartTag {
    ChartPartKind part = ChartPartKind::Title;
};
struct PlotAreaTag {};
struct AnnotationTag {
    std::string annotation_id;
};

// monostate marks structural nodes (groups, axis domain lines, polylines
// backing per-vertex marks).
using SemanticTag =
    std::variant<std::monostate, MarkTag, AxisTag, ChartPartTag, PlotAreaTag, AnnotationTag>;

// -------------------------------------------------------------- geometry --

struct RectGeom {
    Rect r;
};
struct CircleGeom {
    Vec2 c;
    double r = 0;
};
struct EllipseGeom {
    Vec2 c;
    double rx = 0;
    double ry = 0;
};
struct PolylineGeom {
    std::vector<Vec2> pts;
    bool closed = false;  // closed polygons (area marks) are filled
};
struct PathGeom {
    std::string d;  // raw SVG path data
    Rect box;       // its precomputed bounds
};
struct TextGeom {
    Vec2 pos;  // anchor point; y is the baseline
    std::string text;
};

using Geometry = std::variant<std::monostate, RectGeom, CircleGeom, EllipseGeom, PolylineGeom,
                              PathGeom, TextGeom>;

// ----------------------------------------------------------------- style --

struct SceneStyle {
    std::optional<std::string> fill;    // absent -> "none"
    std::optional<std::string> stroke;  // absent -> "none"
    double stroke_width = 1.0;
    double opacity = 1.0;
    double font_size = 10.0;
    bool bold = false;
    std::string text_anchor = "start";
    std::optional<std::vector<double>> dash;
    bool visible = true;               // invisible nodes render nothing and
                                       // never occupy placement cells
    std::optional<double> rotate;      // degrees, applied about rotate_center
    Vec2 rotate_center{0, 0};
};

// ------------------------------------------------------------------ nodes --

struct SceneNode {
    std::string id;
    SemanticTag tag;
    Rect bbox;  // tight bounds of geometry plus all children
    Geometry geometry;
    SceneStyle style;
    std::vector<SceneNode> children;
};

struct SceneGraph {
    double width = 0;
    double height = 0;
    Rect plot;
    std::map<Channel, Scale> scales;
    SceneNode root;

    // Tree search by id (scenes are small; no index to keep in sync).
    const SceneNode* find(const std::string& id) const;
};

// Pre-order walk over a node and its descendants.
void walk_scene(const SceneNode& n, const std::function<void(const SceneNode&)>& fn);

// ------------------------------------------------------------ operations --

struct Tick {
    Value value;
    double pixel = 0;
    std::string label;
};

// Linear/time scales: ticks at {1,2,5}x10^k multiples, step chosen so the
// count lands closest to target (ties -> larger step). Band/ordinal: one
// tick per category at the band center.
std::vector<Tick> tick_positions(const Scale& scale, int target_count);

// Compiles the chart into pixel space. Rows with a null or out-of-domain
// value in an encoded channel are dropped with a warning; surviving rows
// keep their original indices in MarkTag.
SceneGraph build_scene(const ChartSpec& spec, const DataTable& data,
                       const std::map<Channel, Scale>& scales, DiagnosticSink& sink);

// Ten-color categorical palette used for color encodings.
const std::vector<std::string>& category10();

// Debug dump for --dump-scene, stable key order.
std::string scene_to_json(const SceneGraph& g);

}  // namespace anno
