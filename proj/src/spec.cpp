// spec.cpp - document parsing (with duplicate-key detection), validation,
// defaulting, and canonical serialization.
#include "anno/spec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "anno/svg_path.hpp"
#include "json.hpp"

namespace anno {

using json = nlohmann::json;

// ------------------------------------------------------------ name maps --

const char* anchor1d_name(Anchor1D a) {
    switch (a) {
    case Anchor1D::Auto: return "auto";
    case Anchor1D::Start: return "start";
    case Anchor1D::Mid: return "mid";
    case Anchor1D::End: return "end";
    }
    return "?";
}

std::optional<Anchor1D> anchor1d_from_name(const std::string& s) {
    if (s == "auto") return Anchor1D::Auto;
    if (s == "start") return Anchor1D::Start;
    if (s == "mid") return Anchor1D::Mid;
    if (s == "end") return Anchor1D::End;
    return std::nullopt;
}

const char* anchor2d_name(Anchor2D a) {
    switch (a) {
    case Anchor2D::Auto: return "auto";
    case Anchor2D::UpLeft: return "upLeft";
    case Anchor2D::Up: return "up";
    case Anchor2D::UpRight: return "upRight";
    case Anchor2D::MidLeft: return "midLeft";
    case Anchor2D::MidRight: return "midRight";
    case Anchor2D::DownLeft: return "downLeft";
    case Anchor2D::Down: return "down";
    case Anchor2D::DownRight: return "downRight";
    }
    return "?";
}

std::optional<Anchor2D> anchor2d_from_name(const std::string& s) {
    if (s == "auto") return Anchor2D::Auto;
    if (s == "upLeft") return Anchor2D::UpLeft;
    if (s == "up") return Anchor2D::Up;
    if (s == "upRight") return Anchor2D::UpRight;
    if (s == "midLeft") return Anchor2D::MidLeft;
    if (s == "midRight") return Anchor2D::MidRight;
    if (s == "downLeft") return Anchor2D::DownLeft;
    if (s == "down") return Anchor2D::Down;
    if (s == "downRight") return Anchor2D::DownRight;
    return std::nullopt;
}

// --------------------------------------------- duplicate-key SAX scanner --

namespace {

// The DOM parser keeps the last of duplicate keys, silently losing the
// first; a pre-pass catches them with an exact path. A duplicate effect key
// inside an annotation root is the dedicated MultipleEffectsOfType.
class DupScanner : public nlohmann::json_sax<json> {
public:
    Diagnostic error;
    bool failed = false;

    bool null() override { return value_done(); }
    bool boolean(bool) override { return value_done(); }
    bool number_integer(number_integer_t) override { return value_done(); }
    bool number_unsigned(number_unsigned_t) override { return value_done(); }
    bool number_float(number_float_t, const string_t&) override { return value_done(); }
    bool string(string_t&) override { return value_done(); }
    bool binary(binary_t&) override { return value_done(); }

    bool start_object(std::size_t) override {
        stack_.emplace_back();
        return true;
    }
    bool key(string_t& k) override {
        Frame& f = stack_.back();
        f.current = k;
        if (!f.keys.insert(k).second) {
            record_duplicate(k);
            return false;
        }
        return true;
    }
    bool end_object() override {
        stack_.pop_back();
        return value_done();
    }
    bool start_array(std::size_t) override {
        stack_.emplace_back();
        stack_.back().array = true;
        return true;
    }
    bool end_array() override {
        stack_.pop_back();
        return value_done();
    }
    bool parse_error(std::size_t pos, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        if (!failed) {
            failed = true;
            std::string msg = ex.what();
            if (msg.size() > 1 && msg[0] == '[') {  // drop the library's "[...] " tag
                std::size_t close = msg.find("] ");
                if (close != std::string::npos) msg.erase(0, close + 2);
            }
            error = Diagnostic{Severity::Error, "SyntaxError", "",
                               msg + " (byte " + std::to_string(pos) + ")"};
        }
        return false;
    }

private:
    struct Frame {
        bool array = false;
        long idx = 0;
        std::set<std::string> keys;
        std::string current;
    };
    std::vector<Frame> stack_;

    bool value_done() {
        if (!stack_.empty() && stack_.back().array) ++stack_.back().idx;
        return true;
    }

    void record_duplicate(const std::string& k) {
        failed = true;
        std::vector<std::string> parts;
        for (std::size_t i = 0; i + 1 < stack_.size(); ++i)
            parts.push_back(stack_[i].array ? std::to_string(stack_[i].idx) : stack_[i].current);
        std::string path;
        for (const std::string& p : parts) path += p + "/";
        path += k;
        bool in_root = parts.size() == 2 && parts[0] == "annotations" &&
                       !parts[1].empty() &&
                       parts[1].find_first_not_of("0123456789") == std::string::npos;
        bool effect_key = k == "text" || k == "enclosure" || k == "connector" || k == "indicator";
        if (in_root && effect_key)
            error = Diagnostic{Severity::Error, "MultipleEffectsOfType", path,
                               "more than one " + k + " effect on this annotation root"};
        else
            error = Diagnostic{Severity::Error, "SchemaError", path, "duplicate key '" + k + "'"};
    }
};

}  // namespace

json parse_document(const std::string& text) {
    DupScanner scanner;
    if (!json::sax_parse(text, &scanner)) {
        if (scanner.failed) throw SpecError(scanner.error);
        fail("SyntaxError", "", "malformed JSON document");
    }
    json doc = json::parse(text);
    if (!doc.is_object()) fail("SchemaError", "", "top-level value must be an object");
    return doc;
}

// -------------------------------------------------------- parse helpers --

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail("SchemaError", path, std::string("missing required key '") + key + "'");
    return *it;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) fail("SchemaError", path + "/" + it.key(), "unknown key '" + it.key() + "'");
    }
}

const json& expect_object(const json& v, const std::string& path) {
    if (!v.is_object()) fail("SchemaError", path, "expected an object");
    return v;
}

std::string expect_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail("SchemaError", path, "expected a string");
    return v.get<std::string>();
}

double expect_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail("SchemaError", path, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) fail("SchemaError", path, "number must be finite");
    return d;
}

int expect_positive_int(const json& v, const std::string& path) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
        fail("SchemaError", path, "expected a positive integer");
    long long n = v.get<long long>();
    if (n <= 0) fail("SchemaError", path, "expected a positive integer");
    return static_cast<int>(n);
}

Value json_to_value(const json& v, const std::string& path) {
    if (v.is_null()) return Value();
    if (v.is_number()) return Value(expect_number(v, path));
    if (v.is_string()) return Value(v.get<std::string>());
    fail("SchemaError", path, "expected a number or string");
}

bool is_hex_color(const std::string& s) {
    if (s.size() != 7 || s[0] != '#') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isxdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string expect_color(const json& v, const std::string& path, bool none_ok) {
    std::string s = expect_string(v, path);
    if (none_ok && s == "none") return s;
    if (!is_hex_color(s))
        fail("SchemaError", path,
             none_ok ? "expected \"none\" or a #RRGGBB color" : "expected a #RRGGBB color");
    return s;
}

Style parse_style(const json* j, const std::string& path) {
    Style s;
    if (!j) return s;
    expect_object(*j, path);
    check_keys(*j, path,
               {"stroke", "strokeWidth", "fill", "opacity", "fontSize", "fontWeight",
                "textAnchor", "dash"});
    if (j->contains("stroke")) s.stroke = expect_color(j->at("stroke"), path + "/stroke", false);
    if (j->contains("strokeWidth")) {
        s.stroke_width = expect_number(j->at("strokeWidth"), path + "/strokeWidth");
        if (s.stroke_width < 0) fail("SchemaError", path + "/strokeWidth", "must be >= 0");
    }
    if (j->contains("fill")) s.fill = expect_color(j->at("fill"), path + "/fill", true);
    if (j->contains("opacity")) {
        s.opacity = expect_number(j->at("opacity"), path + "/opacity");
        if (s.opacity < 0 || s.opacity > 1)
            fail("SchemaError", path + "/opacity", "opacity must be in [0, 1]");
    }
    if (j->contains("fontSize")) {
        s.font_size = expect_number(j->at("fontSize"), path + "/fontSize");
        if (s.font_size <= 0) fail("SchemaError", path + "/fontSize", "must be > 0");
    }
    if (j->contains("fontWeight")) {
        s.font_weight = expect_string(j->at("fontWeight"), path + "/fontWeight");
        if (s.font_weight != "normal" && s.font_weight != "bold")
            fail("SchemaError", path + "/fontWeight", "expected \"normal\" or \"bold\"");
    }
    if (j->contains("textAnchor")) {
        s.text_anchor = expect_string(j->at("textAnchor"), path + "/textAnchor");
        if (s.text_anchor != "start" && s.text_anchor != "middle" && s.text_anchor != "end")
            fail("SchemaError", path + "/textAnchor", "expected start, middle, or end");
    }
    if (j->contains("dash")) {
        const json& d = j->at("dash");
        if (!d.is_array() || d.empty())
            fail("SchemaError", path + "/dash", "expected a non-empty array of numbers");
        std::vector<double> dash;
        for (std::size_t i = 0; i < d.size(); ++i) {
            double v = expect_number(d[i], path + "/dash/" + std::to_string(i));
            if (v <= 0) fail("SchemaError", path + "/dash/" + std::to_string(i), "must be > 0");
            dash.push_back(v);
        }
        s.dash = std::move(dash);
    }
    return s;
}

FixedPos parse_fixed_pos(const json& j, const std::string& path) {
    expect_object(j, path);
    check_keys(j, path, {"space", "x", "y"});
    FixedPos fp;
    std::string sp = expect_string(require(j, "space", path), path + "/space");
    if (sp == "data") fp.space = FixedPos::Space::Data;
    else if (sp == "pixel") fp.space = FixedPos::Space::Pixel;
    else fail("SchemaError", path + "/space", "expected \"data\" or \"pixel\"");
    fp.x = json_to_value(require(j, "x", path), path + "/x");
    fp.y = json_to_value(require(j, "y", path), path + "/y");
    if (fp.x.is_null() || fp.y.is_null())
        fail("SchemaError", path, "fixed coordinates must be numbers or strings");
    if (fp.space == FixedPos::Space::Pixel && (!fp.x.is_number() || !fp.y.is_number()))
        fail("SchemaError", path, "pixel-space coordinates must be numbers");
    return fp;
}

Position parse_position(const json& j, const std::string& path) {
    expect_object(j, path);
    check_keys(j, path, {"fixed", "anchor", "along", "dx", "dy"});
    Position p;
    int forms = int(j.contains("fixed")) + int(j.contains("anchor")) + int(j.contains("along"));
    if (forms != 1)
        fail("SchemaError", path,
             "position needs exactly one of \"fixed\", \"anchor\", or \"along\"");
    if (j.contains("fixed")) {
        p.kind = Position::Kind::Fixed;
        p.fixed = parse_fixed_pos(j.at("fixed"), path + "/fixed");
    } else if (j.contains("anchor")) {
        p.kind = Position::Kind::Anchor;
        std::string a = expect_string(j.at("anchor"), path + "/anchor");
        auto an = anchor2d_from_name(a);
        if (!an) fail("SchemaError", path + "/anchor", "unknown anchor '" + a + "'");
        p.anchor = *an;
    } else {
        p.kind = Position::Kind::Along;
        std::string a = expect_string(j.at("along"), path + "/along");
        auto an = anchor1d_from_name(a);
        if (!an) fail("SchemaError", path + "/along", "unknown along anchor '" + a + "'");
        p.along = *an;
    }
    if (j.contains("dx")) p.dx = expect_number(j.at("dx"), path + "/dx");
    if (j.contains("dy")) p.dy = expect_number(j.at("dy"), path + "/dy");
    return p;
}

ColumnType axis_value_type(const ChartSpec& chart, Channel axis) {
    switch (chart.encoding(axis).type) {
    case EncodingType::Quantitative: return ColumnType::Number;
    case EncodingType::Temporal: return ColumnType::Temporal;
    case EncodingType::Nominal:
    case EncodingType::Ordinal: return ColumnType::String;
    }
    return ColumnType::Number;
}

Target parse_target(const json& t, const std::string& path, const DataTable& data,
                    const ChartSpec& chart) {
    Target out;
    if (t.is_string()) {
        if (t.get<std::string>() == "none") {
            out.kind = Target::Kind::None;
            return out;
        }
        fail("SchemaError", path, "unknown target '" + t.get<std::string>() + "'");
    }
    expect_object(t, path);
    if (t.size() != 1)
        fail("SchemaError", path, "a target is \"none\" or an object with exactly one key");
    const std::string& key = t.begin().key();
    const json& v = t.begin().value();

    if (key == "id") {
        out.kind = Target::Kind::ById;
        out.id = expect_string(v, path + "/id");
        if (out.id.empty()) fail("SchemaError", path + "/id", "id must be non-empty");
    } else if (key == "fixed") {
        out.kind = Target::Kind::Fixed;
        out.fixed = parse_fixed_pos(v, path + "/fixed");
    } else if (key == "chartPart") {
        out.kind = Target::Kind::ChartPart;
        std::string p = expect_string(v, path + "/chartPart");
        auto part = chart_part_from_name(p);
        if (!part) fail("SchemaError", path + "/chartPart", "unknown chart part '" + p + "'");
        out.part = *part;
    } else if (key == "dataPoint") {
        out.kind = Target::Kind::DataPoint;
        expect_object(v, path + "/dataPoint");
        check_keys(v, path + "/dataPoint", {"expression", "indices"});
        bool has_expr = v.contains("expression");
        bool has_idx = v.contains("indices");
        if (has_expr == has_idx)
            fail("SchemaError", path + "/dataPoint",
                 "dataPoint needs exactly one of \"expression\" or \"indices\"");
        if (has_expr) {
            std::string src =
                expect_string(v.at("expression"), path + "/dataPoint/expression");
            out.expr = parse_expr(src, data, path + "/dataPoint/expression");
            if (out.expr->type != ExprType::Bool)
                fail("TypeError", path + "/dataPoint/expression",
                     "data-point expression must be boolean");
            out.expr_src = src;
        } else {
            const json& idx = v.at("indices");
            if (!idx.is_array())
                fail("SchemaError", path + "/dataPoint/indices", "expected an array");
            std::set<std::size_t> uniq;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                std::string ipath = path + "/dataPoint/indices/" + std::to_string(i);
                if (!idx[i].is_number_integer() && !idx[i].is_number_unsigned())
                    fail("SchemaError", ipath, "expected a non-negative integer");
                long long n = idx[i].get<long long>();
                if (n < 0) fail("SchemaError", ipath, "expected a non-negative integer");
                if (static_cast<std::size_t>(n) >= data.row_count())
                    fail("SchemaError", ipath,
                         "index " + std::to_string(n) + " out of range (table has " +
                             std::to_string(data.row_count()) + " rows)");
                uniq.insert(static_cast<std::size_t>(n));
            }
            if (uniq.empty())
                fail("SchemaError", path + "/dataPoint/indices", "indices must be non-empty");
            out.indices.assign(uniq.begin(), uniq.end());
        }
    } else if (key == "axis") {
        out.kind = Target::Kind::Axis;
        expect_object(v, path + "/axis");
        check_keys(v, path + "/axis", {"axis", "parts", "range"});
        std::string ax = expect_string(require(v, "axis", path + "/axis"), path + "/axis/axis");
        if (ax == "x") out.axis = Channel::X;
        else if (ax == "y") out.axis = Channel::Y;
        else fail("SchemaError", path + "/axis/axis", "expected \"x\" or \"y\"");
        if (v.contains("parts")) {
            const json& parts = v.at("parts");
            auto add_part = [&](const json& pj, const std::string& ppath) {
                std::string p = expect_string(pj, ppath);
                auto part = axis_part_from_name(p);
                if (!part) fail("SchemaError", ppath, "unknown axis part '" + p + "'");
                if (std::find(out.parts.begin(), out.parts.end(), *part) == out.parts.end())
                    out.parts.push_back(*part);
            };
            if (parts.is_array()) {
                if (parts.empty())
                    fail("SchemaError", path + "/axis/parts", "parts must be non-empty");
                for (std::size_t i = 0; i < parts.size(); ++i)
                    add_part(parts[i], path + "/axis/parts/" + std::to_string(i));
            } else {
                add_part(parts, path + "/axis/parts");
            }
        } else {
            out.parts = {AxisPartKind::Label, AxisPartKind::Tick, AxisPartKind::Grid,
                         AxisPartKind::TickLabel};
        }
        if (v.contains("range")) {
            const json& r = v.at("range");
            if (r.is_array()) {
                if (r.size() != 2)
                    fail("SchemaError", path + "/axis/range", "range must be a [lo, hi] pair");
                out.range_pair = std::make_pair(
                    json_to_value(r[0], path + "/axis/range/0"),
                    json_to_value(r[1], path + "/axis/range/1"));
            } else if (r.is_string()) {
                // The predicate ranges over tick values via `datum.value`.
                DataTable synth(
                    {Column{"value", axis_value_type(chart, out.axis)}}, {});
                std::string src = r.get<std::string>();
                out.range_expr = parse_expr(src, synth, path + "/axis/range");
                if (out.range_expr->type != ExprType::Bool)
                    fail("TypeError", path + "/axis/range", "range expression must be boolean");
                out.range_expr_src = src;
            } else {
                fail("SchemaError", path + "/axis/range",
                     "range must be a [lo, hi] pair or an expression string");
            }
        }
    } else {
        fail("SchemaError", path + "/" + key, "unknown target form '" + key + "'");
    }
    return out;
}

bool expr_references_datum(const Expr& e) {
    if (e.kind == Expr::Kind::Field) return true;
    if (e.lhs && expr_references_datum(*e.lhs)) return true;
    if (e.rhs && expr_references_datum(*e.rhs)) return true;
    return false;
}

ExprPtr parse_indicator_level(const std::string& src, const DataTable& data,
                              const std::string& path) {
    ExprPtr e = parse_expr(src, data, path);
    if (expr_references_datum(*e))
        fail("TypeError", path,
             "indicator expressions are row-free; use aggregates instead of datum fields");
    if (e->type != ExprType::Number && e->type != ExprType::Temporal)
        fail("TypeError", path, "indicator expression must yield a number or temporal level");
    return e;
}

std::string effect_id(const json& j, const std::string& path, std::size_t root_index,
                      const char* type) {
    if (j.contains("id")) {
        std::string id = expect_string(j.at("id"), path + "/id");
        if (id.empty()) fail("SchemaError", path + "/id", "id must be non-empty");
        return id;
    }
    return "anno/" + std::to_string(root_index) + "/" + type;
}

const json* style_of(const json& j) {
    auto it = j.find("style");
    return it == j.end() ? nullptr : &*it;
}

AnnotationRoot parse_root(const json& j, std::size_t n, const DataTable& data,
                          const ChartSpec& chart) {
    std::string path = "annotations/" + std::to_string(n);
    expect_object(j, path);
    check_keys(j, path, {"targets", "text", "enclosure", "connector", "indicator"});
    AnnotationRoot root;

    if (!j.contains("targets") || !j.at("targets").is_array() || j.at("targets").empty())
        fail("EmptyTargets", path + "/targets",
             "an annotation root needs a non-empty target list");
    const json& targets = j.at("targets");
    for (std::size_t i = 0; i < targets.size(); ++i)
        root.targets.push_back(
            parse_target(targets[i], path + "/targets/" + std::to_string(i), data, chart));

    if (j.contains("text")) {
        std::string p = path + "/text";
        const json& t = expect_object(j.at("text"), p);
        check_keys(t, p, {"id", "style", "content", "position"});
        TextEffect e;
        e.id = effect_id(t, p, n, "text");
        e.style = parse_style(style_of(t), p + "/style");
        e.content = expect_string(require(t, "content", p), p + "/content");
        if (e.content.empty()) fail("SchemaError", p + "/content", "content must be non-empty");
        if (t.contains("position")) e.position = parse_position(t.at("position"), p + "/position");
        root.text = std::move(e);
    }
    if (j.contains("enclosure")) {
        std::string p = path + "/enclosure";
        const json& t = expect_object(j.at("enclosure"), p);
        check_keys(t, p, {"id", "style", "shape", "padding", "position"});
        EnclosureEffect e;
        e.id = effect_id(t, p, n, "enclosure");
        e.style = parse_style(style_of(t), p + "/style");
        if (t.contains("shape")) {
            const json& sh = t.at("shape");
            if (sh.is_string()) {
                std::string s = sh.get<std::string>();
                if (s == "rect") e.shape = EnclosureEffect::Shape::Rect;
                else if (s == "ellipse") e.shape = EnclosureEffect::Shape::Ellipse;
                else fail("SchemaError", p + "/shape", "unknown shape '" + s + "'");
            } else if (sh.is_object()) {
                check_keys(sh, p + "/shape", {"svgPath"});
                e.shape = EnclosureEffect::Shape::SvgPath;
                e.path_d = expect_string(require(sh, "svgPath", p + "/shape"),
                                         p + "/shape/svgPath");
                parse_svg_path(e.path_d, p + "/shape/svgPath");  // validates
            } else {
                fail("SchemaError", p + "/shape",
                     "shape is \"rect\", \"ellipse\", or {\"svgPath\": \"...\"}");
            }
        }
        if (t.contains("padding")) {
            e.padding = expect_number(t.at("padding"), p + "/padding");
            if (e.padding < 0) fail("SchemaError", p + "/padding", "padding must be >= 0");
        }
        if (t.contains("position")) e.position = parse_position(t.at("position"), p + "/position");
        root.enclosure = std::move(e);
    }
    if (j.contains("connector")) {
        std::string p = path + "/connector";
        const json& t = expect_object(j.at("connector"), p);
        check_keys(t, p, {"id", "style", "markers", "interpolation", "path"});
        ConnectorEffect e;
        e.id = effect_id(t, p, n, "connector");
        e.style = parse_style(style_of(t), p + "/style");
        if (t.contains("markers")) {
            std::string m = expect_string(t.at("markers"), p + "/markers");
            if (m == "none") e.markers = ConnectorEffect::Markers::None;
            else if (m == "arrow-start") e.markers = ConnectorEffect::Markers::ArrowStart;
            else if (m == "arrow-end") e.markers = ConnectorEffect::Markers::ArrowEnd;
            else if (m == "arrow-both") e.markers = ConnectorEffect::Markers::ArrowBoth;
            else fail("SchemaError", p + "/markers", "unknown markers '" + m + "'");
        }
        if (t.contains("interpolation")) {
            std::string m = expect_string(t.at("interpolation"), p + "/interpolation");
            if (m == "linear") e.interpolation = ConnectorEffect::Interp::Linear;
            else if (m == "catmull-rom") e.interpolation = ConnectorEffect::Interp::CatmullRom;
            else if (m == "stepwise") e.interpolation = ConnectorEffect::Interp::Stepwise;
            else fail("SchemaError", p + "/interpolation", "unknown interpolation '" + m + "'");
        }
        if (t.contains("path")) {
            e.path_override = expect_string(t.at("path"), p + "/path");
            parse_svg_path(*e.path_override, p + "/path");  // validates
        }
        root.connector = std::move(e);
    }
    if (j.contains("indicator")) {
        std::string p = path + "/indicator";
        const json& t = expect_object(j.at("indicator"), p);
        check_keys(t, p, {"id", "style", "kind", "expr"});
        IndicatorEffect e;
        e.id = effect_id(t, p, n, "indicator");
        e.style = parse_style(style_of(t), p + "/style");
        std::string k = expect_string(require(t, "kind", p), p + "/kind");
        if (k == "line") e.kind = IndicatorEffect::Kind::Line;
        else if (k == "area") e.kind = IndicatorEffect::Kind::Area;
        else if (k == "arrow") e.kind = IndicatorEffect::Kind::Arrow;
        else fail("SchemaError", p + "/kind", "unknown indicator kind '" + k + "'");
        const json& ex = require(t, "expr", p);
        if (e.kind == IndicatorEffect::Kind::Area) {
            if (!ex.is_array() || ex.size() != 2)
                fail("SchemaError", p + "/expr",
                     "area indicators take a [lo, hi] pair of expressions");
            e.expr_src = expect_string(ex[0], p + "/expr/0");
            e.expr2_src = expect_string(ex[1], p + "/expr/1");
            e.expr = parse_indicator_level(e.expr_src, data, p + "/expr/0");
            e.expr2 = parse_indicator_level(*e.expr2_src, data, p + "/expr/1");
        } else {
            e.expr_src = expect_string(ex, p + "/expr");
            e.expr = parse_indicator_level(e.expr_src, data, p + "/expr");
        }
        root.indicator = std::move(e);
    }

    if (!root.text && !root.enclosure && !root.connector && !root.indicator)
        fail("SchemaError", path,
             "an annotation root needs at least one effect (text, enclosure, connector, or "
             "indicator)");
    return root;
}

ChartSpec parse_chart(const json& j, const std::string& path, const DataTable& data) {
    expect_object(j, path);
    check_keys(j, path, {"mark", "encodings", "width", "height", "title", "subtitle", "caption"});
    ChartSpec c;
    std::string mark = expect_string(require(j, "mark", path), path + "/mark");
    auto m = mark_type_from_name(mark);
    if (!m) fail("SchemaError", path + "/mark", "unknown mark type '" + mark + "'");
    c.mark = *m;

    const json& encs = expect_object(require(j, "encodings", path), path + "/encodings");
    check_keys(encs, path + "/encodings", {"x", "y", "color"});
    auto parse_encoding = [&](const char* name, Channel ch) {
        if (!encs.contains(name)) return;
        std::string epath = path + "/encodings/" + name;
        const json& e = expect_object(encs.at(name), epath);
        check_keys(e, epath, {"field", "type", "scale"});
        Encoding enc;
        enc.field = expect_string(require(e, "field", epath), epath + "/field");
        std::string t = expect_string(require(e, "type", epath), epath + "/type");
        auto et = encoding_type_from_name(t);
        if (!et) fail("SchemaError", epath + "/type", "unknown encoding type '" + t + "'");
        enc.type = *et;
        if (e.contains("scale")) {
            const json& sc = expect_object(e.at("scale"), epath + "/scale");
            check_keys(sc, epath + "/scale", {"domain"});
            const json& dom = require(sc, "domain", epath + "/scale");
            if (!dom.is_array() || dom.empty())
                fail("SchemaError", epath + "/scale/domain", "expected a non-empty array");
            std::vector<Value> vals;
            for (std::size_t i = 0; i < dom.size(); ++i)
                vals.push_back(
                    json_to_value(dom[i], epath + "/scale/domain/" + std::to_string(i)));
            enc.scale_domain = std::move(vals);
        }
        c.encodings.emplace(ch, std::move(enc));
    };
    parse_encoding("x", Channel::X);
    parse_encoding("y", Channel::Y);
    parse_encoding("color", Channel::Color);

    c.width = expect_positive_int(require(j, "width", path), path + "/width");
    c.height = expect_positive_int(require(j, "height", path), path + "/height");
    if (j.contains("title")) c.title = expect_string(j.at("title"), path + "/title");
    if (j.contains("subtitle")) c.subtitle = expect_string(j.at("subtitle"), path + "/subtitle");
    if (j.contains("caption")) c.caption = expect_string(j.at("caption"), path + "/caption");

    validate_encodings(c, data, path);
    return c;
}

Ensemble parse_ensemble(const json& j, const std::string& path) {
    expect_object(j, path);
    if (j.size() != 1)
        fail("SchemaError", path, "an ensemble is an object with exactly one key");
    Ensemble e;
    const std::string& key = j.begin().key();
    const json& v = j.begin().value();
    if (key == "reference") {
        e.kind = Ensemble::Kind::Reference;
        expect_object(v, path + "/reference");
        check_keys(v, path + "/reference", {"from", "to"});
        e.from_id = expect_string(require(v, "from", path + "/reference"),
                                  path + "/reference/from");
        e.to_id = expect_string(require(v, "to", path + "/reference"), path + "/reference/to");
    } else if (key == "composite") {
        e.kind = Ensemble::Kind::Composite;
        expect_object(v, path + "/composite");
        check_keys(v, path + "/composite", {"id", "members"});
        e.id = expect_string(require(v, "id", path + "/composite"), path + "/composite/id");
        const json& m = require(v, "members", path + "/composite");
        if (!m.is_array() || m.empty())
            fail("SchemaError", path + "/composite/members", "expected a non-empty array");
        for (std::size_t i = 0; i < m.size(); ++i)
            e.members.push_back(
                expect_string(m[i], path + "/composite/members/" + std::to_string(i)));
    } else {
        fail("SchemaError", path + "/" + key, "unknown ensemble form '" + key + "'");
    }
    return e;
}

}  // namespace

// ---------------------------------------------------------- data loading --

static bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

static DataTable load_table_file(const std::string& path) {
    if (ends_with(path, ".json")) return DataTable::load_json_rows(path);
    return DataTable::load_csv(path);
}

DataTable load_spec_data(const json& doc, const std::string& base_dir,
                         const std::optional<std::string>& override_path) {
    if (override_path) return load_table_file(*override_path);
    const json& d = expect_object(require(doc, "data", ""), "data");
    check_keys(d, "data", {"url", "values"});
    bool has_url = d.contains("url");
    bool has_values = d.contains("values");
    if (has_url == has_values)
        fail("SchemaError", "data", "data needs exactly one of \"url\" or \"values\"");
    if (has_url) {
        std::string url = expect_string(d.at("url"), "data/url");
        if (url.empty()) fail("SchemaError", "data/url", "url must be non-empty");
        bool absolute = url.front() == '/';
        std::string full = absolute || base_dir.empty() ? url : base_dir + "/" + url;
        return load_table_file(full);
    }
    if (!d.at("values").is_array())
        fail("SchemaError", "data/values", "expected an array of row objects");
    return DataTable::from_json_values(d.at("values"), "data/values");
}

// ----------------------------------------------------------- parse_spec --

Spec parse_spec(const json& doc, const DataTable& data) {
    expect_object(doc, "");
    check_keys(doc, "", {"chart", "data", "annotations", "ensembles"});
    Spec s;
    s.chart = parse_chart(require(doc, "chart", ""), "chart", data);

    const json& d = expect_object(require(doc, "data", ""), "data");
    if (d.contains("url")) s.data_url = expect_string(d.at("url"), "data/url");
    else s.inline_values = d.at("values").dump();

    if (doc.contains("annotations")) {
        const json& annos = doc.at("annotations");
        if (!annos.is_array()) fail("SchemaError", "annotations", "expected an array");
        for (std::size_t i = 0; i < annos.size(); ++i)
            s.annotations.push_back(parse_root(annos[i], i, data, s.chart));
    }
    if (doc.contains("ensembles")) {
        const json& ens = doc.at("ensembles");
        if (!ens.is_array()) fail("SchemaError", "ensembles", "expected an array");
        for (std::size_t i = 0; i < ens.size(); ++i)
            s.ensembles.push_back(parse_ensemble(ens[i], "ensembles/" + std::to_string(i)));
    }

    // Effect and composite ids share one namespace and must be unique.
    std::map<std::string, std::string> seen;  // id -> path
    auto claim = [&](const std::string& id, const std::string& path) {
        auto [it, fresh] = seen.emplace(id, path);
        if (!fresh)
            fail("DuplicateId", path,
                 "id '" + id + "' already used at " + it->second);
    };
    for (std::size_t i = 0; i < s.annotations.size(); ++i) {
        const AnnotationRoot& r = s.annotations[i];
        std::string base = "annotations/" + std::to_string(i);
        if (r.text) claim(r.text->id, base + "/text");
        if (r.enclosure) claim(r.enclosure->id, base + "/enclosure");
        if (r.connector) claim(r.connector->id, base + "/connector");
        if (r.indicator) claim(r.indicator->id, base + "/indicator");
    }
    for (std::size_t i = 0; i < s.ensembles.size(); ++i)
        if (s.ensembles[i].kind == Ensemble::Kind::Composite)
            claim(s.ensembles[i].id, "ensembles/" + std::to_string(i) + "/composite/id");

    return s;
}

// ------------------------------------------------------------- serialize --

namespace {

json value_to_json(const Value& v) {
    if (v.is_null()) return nullptr;
    if (v.is_number()) return v.as_number();
    if (v.is_temporal()) return format_iso8601(v.as_temporal().ms);
    return v.as_string();
}

json style_json(const Style& s) {
    json j;
    j["stroke"] = s.stroke;
    j["strokeWidth"] = s.stroke_width;
    j["fill"] = s.fill;
    j["opacity"] = s.opacity;
    j["fontSize"] = s.font_size;
    j["fontWeight"] = s.font_weight;
    j["textAnchor"] = s.text_anchor;
    if (s.dash) j["dash"] = *s.dash;
    return j;
}

json fixed_pos_json(const FixedPos& fp) {
    json j;
    j["space"] = fp.space == FixedPos::Space::Data ? "data" : "pixel";
    j["x"] = value_to_json(fp.x);
    j["y"] = value_to_json(fp.y);
    return j;
}

json position_json(const Position& p) {
    json j;
    switch (p.kind) {
    case Position::Kind::Fixed: j["fixed"] = fixed_pos_json(p.fixed); break;
    case Position::Kind::Anchor: j["anchor"] = anchor2d_name(p.anchor); break;
    case Position::Kind::Along: j["along"] = anchor1d_name(p.along); break;
    }
    j["dx"] = p.dx;
    j["dy"] = p.dy;
    return j;
}

json target_json(const Target& t) {
    switch (t.kind) {
    case Target::Kind::None: return "none";
    case Target::Kind::ById: return json{{"id", t.id}};
    case Target::Kind::Fixed: return json{{"fixed", fixed_pos_json(t.fixed)}};
    case Target::Kind::ChartPart: return json{{"chartPart", chart_part_name(t.part)}};
    case Target::Kind::DataPoint: {
        json dp;
        if (t.expr_src) dp["expression"] = *t.expr_src;
        else dp["indices"] = t.indices;
        return json{{"dataPoint", std::move(dp)}};
    }
    case Target::Kind::Axis: {
        json ax;
        ax["axis"] = channel_name(t.axis);
        json parts = json::array();
        for (AxisPartKind p : t.parts) parts.push_back(axis_part_name(p));
        ax["parts"] = std::move(parts);
        if (t.range_pair)
            ax["range"] = json::array(
                {value_to_json(t.range_pair->first), value_to_json(t.range_pair->second)});
        else if (t.range_expr_src)
            ax["range"] = *t.range_expr_src;
        return json{{"axis", std::move(ax)}};
    }
    }
    return nullptr;
}

json chart_json(const ChartSpec& c) {
    json j;
    j["mark"] = mark_type_name(c.mark);
    json encs;
    for (const auto& [ch, enc] : c.encodings) {
        json e;
        e["field"] = enc.field;
        e["type"] = encoding_type_name(enc.type);
        if (enc.scale_domain) {
            json dom = json::array();
            for (const Value& v : *enc.scale_domain) dom.push_back(value_to_json(v));
            e["scale"] = json{{"domain", std::move(dom)}};
        }
        encs[channel_name(ch)] = std::move(e);
    }
    j["encodings"] = std::move(encs);
    j["width"] = c.width;
    j["height"] = c.height;
    if (c.title) j["title"] = *c.title;
    if (c.subtitle) j["subtitle"] = *c.subtitle;
    if (c.caption) j["caption"] = *c.caption;
    return j;
}

}  // namespace

std::string serialize_spec(const Spec& s) {
    json j;
    j["chart"] = chart_json(s.chart);
    if (s.data_url) j["data"] = json{{"url", *s.data_url}};
    else j["data"] = json{{"values", json::parse(s.inline_values)}};

    json annos = json::array();
    for (const AnnotationRoot& r : s.annotations) {
        json root;
        json targets = json::array();
        for (const Target& t : r.targets) targets.push_back(target_json(t));
        root["targets"] = std::move(targets);
        if (r.text) {
            json e;
            e["id"] = r.text->id;
            e["style"] = style_json(r.text->style);
            e["content"] = r.text->content;
            if (r.text->position) e["position"] = position_json(*r.text->position);
            root["text"] = std::move(e);
        }
        if (r.enclosure) {
            json e;
            e["id"] = r.enclosure->id;
            e["style"] = style_json(r.enclosure->style);
            switch (r.enclosure->shape) {
            case EnclosureEffect::Shape::Rect: e["shape"] = "rect"; break;
            case EnclosureEffect::Shape::Ellipse: e["shape"] = "ellipse"; break;
            case EnclosureEffect::Shape::SvgPath:
                e["shape"] = json{{"svgPath", r.enclosure->path_d}};
                break;
            }
            e["padding"] = r.enclosure->padding;
            if (r.enclosure->position) e["position"] = position_json(*r.enclosure->position);
            root["enclosure"] = std::move(e);
        }
        if (r.connector) {
            json e;
            e["id"] = r.connector->id;
            e["style"] = style_json(r.connector->style);
            switch (r.connector->markers) {
            case ConnectorEffect::Markers::None: e["markers"] = "none"; break;
            case ConnectorEffect::Markers::ArrowStart: e["markers"] = "arrow-start"; break;
            case ConnectorEffect::Markers::ArrowEnd: e["markers"] = "arrow-end"; break;
            case ConnectorEffect::Markers::ArrowBoth: e["markers"] = "arrow-both"; break;
            }
            switch (r.connector->interpolation) {
            case ConnectorEffect::Interp::Linear: e["interpolation"] = "linear"; break;
            case ConnectorEffect::Interp::CatmullRom: e["interpolation"] = "catmull-rom"; break;
            case ConnectorEffect::Interp::Stepwise: e["interpolation"] = "stepwise"; break;
            }
            if (r.connector->path_override) e["path"] = *r.connector->path_override;
            root["connector"] = std::move(e);
        }
        if (r.indicator) {
            json e;
            e["id"] = r.indicator->id;
            e["style"] = style_json(r.indicator->style);
            switch (r.indicator->kind) {
            case IndicatorEffect::Kind::Line: e["kind"] = "line"; break;
            case IndicatorEffect::Kind::Area: e["kind"] = "area"; break;
            case IndicatorEffect::Kind::Arrow: e["kind"] = "arrow"; break;
            }
            if (r.indicator->expr2_src)
                e["expr"] = json::array({r.indicator->expr_src, *r.indicator->expr2_src});
            else
                e["expr"] = r.indicator->expr_src;
            root["indicator"] = std::move(e);
        }
        annos.push_back(std::move(root));
    }
    j["annotations"] = std::move(annos);

    if (!s.ensembles.empty()) {
        json ens = json::array();
        for (const Ensemble& e : s.ensembles) {
            if (e.kind == Ensemble::Kind::Reference)
                ens.push_back(json{{"reference", {{"from", e.from_id}, {"to", e.to_id}}}});
            else
                ens.push_back(json{{"composite", {{"id", e.id}, {"members", e.members}}}});
        }
        j["ensembles"] = std::move(ens);
    }
    return j.dump(2) + "\n";
}

bool spec_equal(const Spec& a, const Spec& b) {
    return serialize_spec(a) == serialize_spec(b);
}

}  // namespace anno
