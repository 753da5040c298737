// scene.cpp - chart compilation into the pixel-space scene graph.
#include "anno/scene.hpp"

#include <algorithm>
#include <cmath>

#include "anno/text_metrics.hpp"
#include "json.hpp"

namespace anno {

// ------------------------------------------------------------------ misc --

const char* axis_part_name(AxisPartKind p) {
    switch (p) {
    case AxisPartKind::Label: return "label";
    case AxisPartKind::Tick: return "tick";
    case AxisPartKind::Grid: return "grid";
    case AxisPartKind::TickLabel: return "tick-label";
    }
    return "?";
}

std::optional<AxisPartKind> axis_part_from_name(const std::string& s) {
    if (s == "label") return AxisPartKind::Label;
    if (s == "tick") return AxisPartKind::Tick;
    if (s == "grid") return AxisPartKind::Grid;
    if (s == "tick-label") return AxisPartKind::TickLabel;
    return std::nullopt;
}

const std::vector<std::string>& category10() {
    static const std::vector<std::string> palette = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return palette;
}

void walk_scene(const SceneNode& n, const std::function<void(const SceneNode&)>& fn) {
    fn(n);
    for (const SceneNode& c : n.children) walk_scene(c, fn);
}

static const SceneNode* find_in(const SceneNode& n, const std::string& id) {
    if (n.id == id) return &n;
    for (const SceneNode& c : n.children)
        if (const SceneNode* hit = find_in(c, id)) return hit;
    return nullptr;
}

const SceneNode* SceneGraph::find(const std::string& id) const {
    return find_in(root, id);
}

// ------------------------------------------------------------------ ticks --

static std::string time_tick_label(std::int64_t ms) {
    // Midnight ticks read better as bare dates.
    std::string full = format_iso8601(ms);
    if (ms % 86400000 == 0 && ms >= 0) return full.substr(0, 10);
    return full;
}

std::vector<Tick> tick_positions(const Scale& scale, int target_count) {
    std::vector<Tick> out;
    if (scale.kind == Scale::Kind::Band || scale.kind == Scale::Kind::PointOrdinal) {
        for (std::size_t i = 0; i < scale.categories.size(); ++i)
            out.push_back(
                Tick{Value(scale.categories[i]), scale.band_center(i), scale.categories[i]});
        return out;
    }
    TickStep ts = choose_tick_step_parts(scale.d0, scale.d1, target_count);
    long i0 = std::lround(nice_ceil(scale.d0, ts.step) / ts.step);
    long i1 = std::lround(nice_floor(scale.d1, ts.step) / ts.step);
    for (long i = i0; i <= i1; ++i) {
        // Exact decimal: (i*mantissa) scaled by 10^exp10.
        double scaled = static_cast<double>(i * ts.mantissa);
        double v = ts.exp10 >= 0 ? scaled * std::pow(10.0, ts.exp10)
                                 : scaled / std::pow(10.0, -ts.exp10);
        if (scale.kind == Scale::Kind::Time) {
            Temporal t{static_cast<std::int64_t>(std::llround(v))};
            out.push_back(Tick{Value(t), scale.apply_continuous(v), time_tick_label(t.ms)});
        } else {
            out.push_back(Tick{Value(v), scale.apply_continuous(v), format_number(v)});
        }
    }
    return out;
}

// ------------------------------------------------------------- factories --

static std::optional<Rect> geometry_bbox(const Geometry& g) {
    if (std::holds_alternative<RectGeom>(g)) return std::get<RectGeom>(g).r;
    if (std::holds_alternative<CircleGeom>(g)) {
        const auto& c = std::get<CircleGeom>(g);
        return Rect{c.c.x - c.r, c.c.y - c.r, 2 * c.r, 2 * c.r};
    }
    if (std::holds_alternative<EllipseGeom>(g)) {
        const auto& e = std::get<EllipseGeom>(g);
        return Rect{e.c.x - e.rx, e.c.y - e.ry, 2 * e.rx, 2 * e.ry};
    }
    if (std::holds_alternative<PolylineGeom>(g)) {
        const auto& p = std::get<PolylineGeom>(g);
        if (p.pts.empty()) return std::nullopt;
        return rect_from_points(p.pts);
    }
    if (std::holds_alternative<PathGeom>(g)) return std::get<PathGeom>(g).box;
    return std::nullopt;  // monostate and TextGeom (text bbox is set by its factory)
}

// Recomputes a group's bbox as the union of its own geometry and children.
static void fit_bbox(SceneNode& n) {
    std::optional<Rect> acc;
    if (std::holds_alternative<TextGeom>(n.geometry)) acc = n.bbox;
    else acc = geometry_bbox(n.geometry);
    for (const SceneNode& c : n.children) acc = acc ? acc->union_with(c.bbox) : c.bbox;
    n.bbox = acc.value_or(Rect{0, 0, 0, 0});
}

static SceneNode text_node(std::string id, SemanticTag tag, const std::string& text,
                           Vec2 baseline_pos, double size, const std::string& anchor,
                           std::string fill, bool bold = false) {
    SceneNode n;
    n.id = std::move(id);
    n.tag = std::move(tag);
    n.geometry = TextGeom{baseline_pos, text};
    n.style.fill = std::move(fill);
    n.style.font_size = size;
    n.style.bold = bold;
    n.style.text_anchor = anchor;
    TextSize m = measure_text(text, size);
    double x0 = baseline_pos.x;
    if (anchor == "middle") x0 -= m.w / 2;
    else if (anchor == "end") x0 -= m.w;
    n.bbox = Rect{x0, baseline_pos.y - kBaselineFactor * size, m.w, m.h};
    return n;
}

static SceneNode line_node(std::string id, SemanticTag tag, Vec2 a, Vec2 b, std::string stroke,
                           double width = 1.0) {
    SceneNode n;
    n.id = std::move(id);
    n.tag = std::move(tag);
    n.geometry = PolylineGeom{{a, b}, false};
    n.style.stroke = std::move(stroke);
    n.style.stroke_width = width;
    n.bbox = rect_from_points({a, b});
    return n;
}

static SceneNode group_node(std::string id) {
    SceneNode n;
    n.id = std::move(id);
    return n;
}

// ------------------------------------------------------------ build_scene --

namespace {

struct RowPixel {
    std::size_t row;
    Vec2 p;
    int color = -1;  // palette index, -1 when no color encoding
};

constexpr const char* kAxisColor = "#333333";
constexpr const char* kGridColor = "#e0e0e0";
constexpr const char* kMutedColor = "#666666";
constexpr const char* kDefaultMarkColor = "#4682b4";
constexpr double kTickLen = 5;
constexpr double kPointRadius = 3;
constexpr double kVertexBox = 6;  // invisible per-vertex anchor extent

std::string mark_fill(int color_idx) {
    if (color_idx < 0) return kDefaultMarkColor;
    const auto& pal = category10();
    return pal[static_cast<std::size_t>(color_idx) % pal.size()];
}

}  // namespace

SceneGraph build_scene(const ChartSpec& spec, const DataTable& data,
                       const std::map<Channel, Scale>& scales, DiagnosticSink& sink) {
    SceneGraph g;
    g.width = spec.width;
    g.height = spec.height;
    g.plot = plot_area(spec);
    g.scales = scales;
    g.root = group_node("chart");

    const Scale& sx = scales.at(Channel::X);
    const Scale& sy = scales.at(Channel::Y);
    const Scale* sc = spec.has(Channel::Color) ? &scales.at(Channel::Color) : nullptr;
    std::size_t xcol = *data.column_index(spec.encoding(Channel::X).field);
    std::size_t ycol = *data.column_index(spec.encoding(Channel::Y).field);
    std::size_t ccol = sc ? *data.column_index(spec.encoding(Channel::Color).field) : 0;

    // Project every row; drop the ones that cannot be positioned.
    std::vector<RowPixel> rows;
    for (std::size_t r = 0; r < data.row_count(); ++r) {
        const Value& vx = data.at(r, xcol);
        const Value& vy = data.at(r, ycol);
        std::string why;
        if (vx.is_null() || vy.is_null()) {
            why = "null value in a positional encoding";
        } else {
            try {
                RowPixel rp{r, Vec2{scale_apply_checked(sx, vx), scale_apply_checked(sy, vy)}, -1};
                if (sc) {
                    const Value& vc = data.at(r, ccol);
                    if (vc.is_null()) {
                        why = "null value in the color encoding";
                    } else if (auto ci = sc->category_index(value_to_text(vc))) {
                        rp.color = static_cast<int>(*ci);
                    } else {
                        why = "color value '" + value_to_text(vc) + "' outside the scale domain";
                    }
                }
                if (why.empty()) {
                    rows.push_back(rp);
                    continue;
                }
            } catch (const SpecError& e) {
                if (e.diagnostic().code != "DomainMiss") throw;
                why = e.diagnostic().message;
            }
        }
        sink.warn("RowDropped", "data/rows/" + std::to_string(r), "row dropped: " + why);
    }

    // Plot area (invisible; exists as a targetable node).
    {
        SceneNode plotn = group_node("chart/plot");
        plotn.tag = PlotAreaTag{};
        plotn.geometry = RectGeom{g.plot};
        plotn.style.visible = false;
        plotn.bbox = g.plot;
        g.root.children.push_back(std::move(plotn));
    }

    std::vector<Tick> xticks = tick_positions(sx, kDefaultTickTarget);
    std::vector<Tick> yticks = tick_positions(sy, kDefaultTickTarget);
    double bottom = g.plot.bottom();

    // Gridlines (painted under marks; excluded from occupancy by tag).
    {
        SceneNode grid = group_node("grid");
        for (std::size_t i = 0; i < xticks.size(); ++i) {
            SceneNode n = line_node("axis/x/grid/" + std::to_string(i),
                                    AxisTag{Channel::X, AxisPartKind::Grid, xticks[i].value},
                                    Vec2{xticks[i].pixel, g.plot.y}, Vec2{xticks[i].pixel, bottom},
                                    kGridColor);
            grid.children.push_back(std::move(n));
        }
        for (std::size_t i = 0; i < yticks.size(); ++i) {
            SceneNode n = line_node("axis/y/grid/" + std::to_string(i),
                                    AxisTag{Channel::Y, AxisPartKind::Grid, yticks[i].value},
                                    Vec2{g.plot.x, yticks[i].pixel},
                                    Vec2{g.plot.right(), yticks[i].pixel}, kGridColor);
            grid.children.push_back(std::move(n));
        }
        fit_bbox(grid);
        g.root.children.push_back(std::move(grid));
    }

    // Marks.
    {
        SceneNode marks = group_node("marks");
        auto vertex_node = [&](const RowPixel& rp) {
            SceneNode n = group_node("mark/" + std::to_string(rp.row));
            n.tag = MarkTag{rp.row};
            n.style.visible = false;
            n.bbox = Rect{rp.p.x - kVertexBox / 2, rp.p.y - kVertexBox / 2, kVertexBox, kVertexBox};
            return n;
        };
        switch (spec.mark) {
        case MarkType::Bar: {
            for (const RowPixel& rp : rows) {
                const Value& vx = data.at(rp.row, xcol);
                std::size_t bi = *sx.category_index(value_to_text(vx));
                double y0 = sy.apply_continuous(0.0);
                double top = std::min(rp.p.y, y0);
                SceneNode n;
                n.id = "mark/" + std::to_string(rp.row);
                n.tag = MarkTag{rp.row};
                n.geometry = RectGeom{Rect{sx.band_start(bi), top, sx.band_width(),
                                           std::abs(rp.p.y - y0)}};
                n.style.fill = mark_fill(rp.color);
                n.bbox = std::get<RectGeom>(n.geometry).r;
                marks.children.push_back(std::move(n));
            }
            break;
        }
        case MarkType::Point: {
            for (const RowPixel& rp : rows) {
                SceneNode n;
                n.id = "mark/" + std::to_string(rp.row);
                n.tag = MarkTag{rp.row};
                n.geometry = CircleGeom{rp.p, kPointRadius};
                n.style.fill = mark_fill(rp.color);
                n.bbox = *geometry_bbox(n.geometry);
                marks.children.push_back(std::move(n));
            }
            break;
        }
        case MarkType::Line:
        case MarkType::Area: {
            // One path per color series; vertices sorted by x (stable on row).
            std::map<int, std::vector<RowPixel>> series;
            for (const RowPixel& rp : rows) series[rp.color].push_back(rp);
            bool multi = series.size() > 1 || (sc != nullptr);
            for (auto& [ci, pts] : series) {
                std::stable_sort(pts.begin(), pts.end(),
                                 [](const RowPixel& a, const RowPixel& b) { return a.p.x < b.p.x; });
                SceneNode n;
                const char* base = spec.mark == MarkType::Line ? "mark/line" : "mark/area";
                n.id = multi ? std::string(base) + "/" + std::to_string(ci) : base;
                PolylineGeom poly;
                for (const RowPixel& rp : pts) poly.pts.push_back(rp.p);
                if (spec.mark == MarkType::Area && !poly.pts.empty()) {
                    // Close down to the plot floor.
                    poly.pts.push_back(Vec2{poly.pts.back().x, bottom});
                    poly.pts.push_back(Vec2{poly.pts.front().x, bottom});
                    poly.closed = true;
                    n.style.fill = mark_fill(ci);
                    n.style.opacity = 0.7;
                } else {
                    n.style.stroke = mark_fill(ci);
                    n.style.stroke_width = 1.5;
                }
                n.bbox = poly.pts.empty() ? Rect{g.plot.x, bottom, 0, 0}
                                          : rect_from_points(poly.pts);
                n.geometry = std::move(poly);
                marks.children.push_back(std::move(n));
            }
            for (const RowPixel& rp : rows) marks.children.push_back(vertex_node(rp));
            break;
        }
        }
        fit_bbox(marks);
        g.root.children.push_back(std::move(marks));
    }

    // Axes: domain line, ticks, tick labels, axis label.
    {
        SceneNode ax = group_node("axis/x");
        ax.children.push_back(line_node("axis/x/domain", std::monostate{}, Vec2{g.plot.x, bottom},
                                        Vec2{g.plot.right(), bottom}, kAxisColor));
        for (std::size_t i = 0; i < xticks.size(); ++i) {
            ax.children.push_back(line_node(
                "axis/x/tick/" + std::to_string(i),
                AxisTag{Channel::X, AxisPartKind::Tick, xticks[i].value},
                Vec2{xticks[i].pixel, bottom}, Vec2{xticks[i].pixel, bottom + kTickLen},
                kAxisColor));
        }
        for (std::size_t i = 0; i < xticks.size(); ++i) {
            ax.children.push_back(text_node(
                "axis/x/tick-label/" + std::to_string(i),
                AxisTag{Channel::X, AxisPartKind::TickLabel, xticks[i].value}, xticks[i].label,
                Vec2{xticks[i].pixel, bottom + 16}, 10, "middle", kAxisColor));
        }
        ax.children.push_back(text_node("axis/x/label",
                                        AxisTag{Channel::X, AxisPartKind::Label, Value()},
                                        spec.encoding(Channel::X).field,
                                        Vec2{g.plot.x + g.plot.w / 2, bottom + 30.9}, 11, "middle",
                                        kAxisColor));
        fit_bbox(ax);
        g.root.children.push_back(std::move(ax));

        SceneNode ay = group_node("axis/y");
        ay.children.push_back(line_node("axis/y/domain", std::monostate{}, Vec2{g.plot.x, g.plot.y},
                                        Vec2{g.plot.x, bottom}, kAxisColor));
        for (std::size_t i = 0; i < yticks.size(); ++i) {
            ay.children.push_back(line_node(
                "axis/y/tick/" + std::to_string(i),
                AxisTag{Channel::Y, AxisPartKind::Tick, yticks[i].value},
                Vec2{g.plot.x - kTickLen, yticks[i].pixel}, Vec2{g.plot.x, yticks[i].pixel},
                kAxisColor));
        }
        for (std::size_t i = 0; i < yticks.size(); ++i) {
            ay.children.push_back(text_node(
                "axis/y/tick-label/" + std::to_string(i),
                AxisTag{Channel::Y, AxisPartKind::TickLabel, yticks[i].value}, yticks[i].label,
                Vec2{g.plot.x - 7, yticks[i].pixel + 3}, 10, "end", kAxisColor));
        }
        {
            // Vertical axis title, rotated 90° CCW about its center.
            const std::string& label = spec.encoding(Channel::Y).field;
            double size = 11;
            Vec2 center{14, g.plot.y + g.plot.h / 2};
            SceneNode n = text_node("axis/y/label",
                                    AxisTag{Channel::Y, AxisPartKind::Label, Value()}, label,
                                    Vec2{center.x, center.y + (kBaselineFactor - 0.6) * size},
                                    size, "middle", kAxisColor);
            n.style.rotate = -90;
            n.style.rotate_center = center;
            TextSize m = measure_text(label, size);
            n.bbox = Rect{center.x - 0.6 * size, center.y - m.w / 2, kLineHeightFactor * size, m.w};
            ay.children.push_back(std::move(n));
        }
        fit_bbox(ay);
        g.root.children.push_back(std::move(ay));
    }

    // Chart parts.
    if (spec.title)
        g.root.children.push_back(text_node("chart/title", ChartPartTag{ChartPartKind::Title},
                                            *spec.title, Vec2{g.width / 2, 20}, 14, "middle",
                                            kAxisColor, true));
    if (spec.subtitle)
        g.root.children.push_back(text_node("chart/subtitle",
                                            ChartPartTag{ChartPartKind::Subtitle}, *spec.subtitle,
                                            Vec2{g.width / 2, 34}, 12, "middle", kMutedColor));
    if (spec.caption)
        g.root.children.push_back(text_node("chart/caption", ChartPartTag{ChartPartKind::Caption},
                                            *spec.caption, Vec2{g.plot.x, g.height - 6}, 10,
                                            "start", kMutedColor));
    if (sc) {
        SceneNode legend = group_node("chart/legend");
        legend.tag = ChartPartTag{ChartPartKind::Legend};
        double x0 = g.plot.right() + 10;
        for (std::size_t i = 0; i < sc->categories.size(); ++i) {
            double y0 = g.plot.y + static_cast<double>(i) * 16;
            SceneNode sw;
            sw.id = "chart/legend/swatch/" + std::to_string(i);
            sw.geometry = RectGeom{Rect{x0, y0, 10, 10}};
            sw.style.fill = mark_fill(static_cast<int>(i));
            sw.bbox = std::get<RectGeom>(sw.geometry).r;
            legend.children.push_back(std::move(sw));
            legend.children.push_back(text_node("chart/legend/label/" + std::to_string(i),
                                                std::monostate{}, sc->categories[i],
                                                Vec2{x0 + 14, y0 + 8}, 10, "start", kAxisColor));
        }
        fit_bbox(legend);
        g.root.children.push_back(std::move(legend));
    }

    fit_bbox(g.root);
    return g;
}

// ------------------------------------------------------------- JSON dump --

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json value_json(const Value& v) {
    if (v.is_null()) return nullptr;
    if (v.is_number()) return v.as_number();
    if (v.is_temporal()) return format_iso8601(v.as_temporal().ms);
    return v.as_string();
}

ordered_json tag_json(const SemanticTag& t) {
    ordered_json j;
    if (std::holds_alternative<MarkTag>(t)) {
        j["kind"] = "mark";
        j["row"] = std::get<MarkTag>(t).row;
    } else if (std::holds_alternative<AxisTag>(t)) {
        const auto& a = std::get<AxisTag>(t);
        j["kind"] = "axis";
        j["axis"] = channel_name(a.axis);
        j["part"] = axis_part_name(a.part);
        j["value"] = value_json(a.value);
    } else if (std::holds_alternative<ChartPartTag>(t)) {
        j["kind"] = "chart-part";
        j["part"] = chart_part_name(std::get<ChartPartTag>(t).part);
    } else if (std::holds_alternative<PlotAreaTag>(t)) {
        j["kind"] = "plot-area";
    } else if (std::holds_alternative<AnnotationTag>(t)) {
        j["kind"] = "annotation";
        j["id"] = std::get<AnnotationTag>(t).annotation_id;
    } else {
        j["kind"] = "group";
    }
    return j;
}

ordered_json geometry_json(const Geometry& g) {
    ordered_json j;
    if (std::holds_alternative<RectGeom>(g)) {
        const Rect& r = std::get<RectGeom>(g).r;
        j = {{"type", "rect"}, {"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
    } else if (std::holds_alternative<CircleGeom>(g)) {
        const auto& c = std::get<CircleGeom>(g);
        j = {{"type", "circle"}, {"cx", c.c.x}, {"cy", c.c.y}, {"r", c.r}};
    } else if (std::holds_alternative<EllipseGeom>(g)) {
        const auto& e = std::get<EllipseGeom>(g);
        j = {{"type", "ellipse"}, {"cx", e.c.x}, {"cy", e.c.y}, {"rx", e.rx}, {"ry", e.ry}};
    } else if (std::holds_alternative<PolylineGeom>(g)) {
        const auto& p = std::get<PolylineGeom>(g);
        j["type"] = p.closed ? "polygon" : "polyline";
        ordered_json pts = ordered_json::array();
        for (const Vec2& v : p.pts) pts.push_back({v.x, v.y});
        j["points"] = std::move(pts);
    } else if (std::holds_alternative<PathGeom>(g)) {
        j = {{"type", "path"}, {"d", std::get<PathGeom>(g).d}};
    } else if (std::holds_alternative<TextGeom>(g)) {
        const auto& t = std::get<TextGeom>(g);
        j = {{"type", "text"}, {"x", t.pos.x}, {"y", t.pos.y}, {"text", t.text}};
    }
    return j;
}

ordered_json node_json(const SceneNode& n) {
    ordered_json j;
    j["id"] = n.id;
    j["tag"] = tag_json(n.tag);
    j["bbox"] = {n.bbox.x, n.bbox.y, n.bbox.w, n.bbox.h};
    if (!std::holds_alternative<std::monostate>(n.geometry))
        j["geometry"] = geometry_json(n.geometry);
    if (!n.style.visible) j["visible"] = false;
    if (!n.children.empty()) {
        ordered_json kids = ordered_json::array();
        for (const SceneNode& c : n.children) kids.push_back(node_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

}  // namespace

std::string scene_to_json(const SceneGraph& g) {
    ordered_json j;
    j["width"] = g.width;
    j["height"] = g.height;
    j["plot"] = {g.plot.x, g.plot.y, g.plot.w, g.plot.h};
    j["root"] = node_json(g.root);
    return j.dump(2) + "\n";
}

}  // namespace anno
