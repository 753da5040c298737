// render.cpp - SVG output. Attribute order is fixed per element type and all
// coordinates go through format_fixed so reruns are byte-identical.
#include "anno/render.hpp"

#include <sstream>

namespace anno {

namespace {

std::string num(double v) { return format_fixed(v, 2); }

std::string dash_attr(const std::vector<double>& dash) {
    std::string out;
    for (std::size_t i = 0; i < dash.size(); ++i) {
        if (i) out += ' ';
        out += format_number(dash[i]);
    }
    return out;
}

std::string points_attr(const std::vector<Vec2>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += num(pts[i].x) + "," + num(pts[i].y);
    }
    return out;
}

class SvgWriter {
public:
    void open(const std::string& tag) {
        out_ << '<' << tag;
        tag_ = tag;
    }
    void attr(const std::string& name, const std::string& value) {
        out_ << ' ' << name << "=\"" << xml_escape(value) << '"';
    }
    void close_empty() { out_ << "/>\n"; }
    void close_with_text(const std::string& text) {
        out_ << '>' << xml_escape(text) << "</" << tag_ << ">\n";
    }
    void raw(const std::string& s) { out_ << s; }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
    std::string tag_;
};

// Paint attributes shared by every shape, in one fixed order.
struct Paint {
    std::string fill = "none";
    std::string stroke = "none";
    double stroke_width = 1;
    std::optional<std::vector<double>> dash;
    double opacity = 1;
};

void paint_attrs(SvgWriter& w, const Paint& p) {
    w.attr("fill", p.fill);
    w.attr("stroke", p.stroke);
    if (p.stroke != "none") w.attr("stroke-width", num(p.stroke_width));
    if (p.dash && !p.dash->empty()) w.attr("stroke-dasharray", dash_attr(*p.dash));
    if (p.opacity != 1) w.attr("opacity", num(p.opacity));
}

struct TextPaint {
    double font_size = 10;
    std::string font_weight = "normal";
    std::string text_anchor = "start";
    std::string fill = "#000000";
    double opacity = 1;
    std::optional<double> rotate;
    Vec2 rotate_center{0, 0};
};

void emit_text(SvgWriter& w, const std::string& id, const TextGeom& g, const TextPaint& p) {
    w.open("text");
    if (!id.empty()) w.attr("id", id);
    w.attr("x", num(g.pos.x));
    w.attr("y", num(g.pos.y));
    w.attr("font-family", "sans-serif");
    w.attr("font-size", num(p.font_size));
    if (p.font_weight != "normal") w.attr("font-weight", p.font_weight);
    if (p.text_anchor != "start") w.attr("text-anchor", p.text_anchor);
    w.attr("fill", p.fill);
    if (p.opacity != 1) w.attr("opacity", num(p.opacity));
    if (p.rotate)
        w.attr("transform", "rotate(" + num(*p.rotate) + " " + num(p.rotate_center.x) + " " +
                                num(p.rotate_center.y) + ")");
    w.close_with_text(g.text);
}

void emit_shape(SvgWriter& w, const std::string& id, const Geometry& geom, const Paint& p) {
    if (const auto* r = std::get_if<RectGeom>(&geom)) {
        w.open("rect");
        if (!id.empty()) w.attr("id", id);
        w.attr("x", num(r->r.x));
        w.attr("y", num(r->r.y));
        w.attr("width", num(r->r.w));
        w.attr("height", num(r->r.h));
        paint_attrs(w, p);
        w.close_empty();
    } else if (const auto* c = std::get_if<CircleGeom>(&geom)) {
        w.open("circle");
        if (!id.empty()) w.attr("id", id);
        w.attr("cx", num(c->c.x));
        w.attr("cy", num(c->c.y));
        w.attr("r", num(c->r));
        paint_attrs(w, p);
        w.close_empty();
    } else if (const auto* e = std::get_if<EllipseGeom>(&geom)) {
        w.open("ellipse");
        if (!id.empty()) w.attr("id", id);
        w.attr("cx", num(e->c.x));
        w.attr("cy", num(e->c.y));
        w.attr("rx", num(e->rx));
        w.attr("ry", num(e->ry));
        paint_attrs(w, p);
        w.close_empty();
    } else if (const auto* pl = std::get_if<PolylineGeom>(&geom)) {
        w.open(pl->closed ? "polygon" : "polyline");
        if (!id.empty()) w.attr("id", id);
        w.attr("points", points_attr(pl->pts));
        paint_attrs(w, p);
        w.close_empty();
    } else if (const auto* pa = std::get_if<PathGeom>(&geom)) {
        w.open("path");
        if (!id.empty()) w.attr("id", id);
        w.attr("d", pa->d);
        paint_attrs(w, p);
        w.close_empty();
    }
}

void emit_scene_node(SvgWriter& w, const SceneNode& n) {
    if (!n.style.visible) return;
    if (!n.children.empty()) {
        w.raw("<g id=\"" + xml_escape(n.id) + "\">\n");
        if (!std::holds_alternative<std::monostate>(n.geometry)) {
            Paint p{n.style.fill.value_or("none"), n.style.stroke.value_or("none"),
                    n.style.stroke_width, n.style.dash, n.style.opacity};
            emit_shape(w, n.id + "/shape", n.geometry, p);
        }
        for (const SceneNode& c : n.children) emit_scene_node(w, c);
        w.raw("</g>\n");
        return;
    }
    if (const auto* t = std::get_if<TextGeom>(&n.geometry)) {
        TextPaint p;
        p.font_size = n.style.font_size;
        p.font_weight = n.style.bold ? "bold" : "normal";
        p.text_anchor = n.style.text_anchor;
        p.fill = n.style.fill.value_or("#000000");
        p.opacity = n.style.opacity;
        p.rotate = n.style.rotate;
        p.rotate_center = n.style.rotate_center;
        emit_text(w, n.id, *t, p);
        return;
    }
    Paint p{n.style.fill.value_or("none"), n.style.stroke.value_or("none"), n.style.stroke_width,
            n.style.dash, n.style.opacity};
    emit_shape(w, n.id, n.geometry, p);
}

void emit_annotation(SvgWriter& w, const AnnoElement& el) {
    if (el.is_text) {
        const auto* t = std::get_if<TextGeom>(&el.geom);
        if (!t) return;
        TextPaint p;
        p.font_size = el.style.font_size;
        p.font_weight = el.style.font_weight;
        p.text_anchor = el.style.text_anchor;
        p.fill = el.style.stroke;  // text ink follows the stroke color
        p.opacity = el.style.opacity;
        emit_text(w, el.id, *t, p);
        return;
    }
    Paint p{el.style.fill, el.style.stroke, el.style.stroke_width, el.style.dash,
            el.style.opacity};
    if (el.fill_with_stroke) {
        p.fill = el.style.stroke;
        p.stroke = "none";
    }
    emit_shape(w, el.id, el.geom, p);
}

}  // namespace

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string render_svg(const SceneGraph& scene, const std::vector<AnnoElement>& annotations) {
    SvgWriter w;
    w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    w.raw("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(scene.width) +
          "\" height=\"" + num(scene.height) + "\" viewBox=\"0 0 " + num(scene.width) + " " +
          num(scene.height) + "\">\n");
    emit_scene_node(w, scene.root);
    if (!annotations.empty()) {
        w.raw("<g id=\"annotations\">\n");
        for (const AnnoElement& el : annotations) emit_annotation(w, el);
        w.raw("</g>\n");
    }
    w.raw("</svg>\n");
    return w.str();
}

}  // namespace anno
