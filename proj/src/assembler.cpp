// assembler.cpp - rounds-based ensemble assembly: binds ById/Composite
// references, places text, routes connectors and indicators.
#include "anno/assembler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "anno/resolver.hpp"
#include "anno/svg_path.hpp"
#include "anno/text_metrics.hpp"

namespace anno {

namespace {

[[noreturn]] void rethrow_at(const SpecError& e, const std::string& path) {
    Diagnostic d = e.diagnostic();
    if (d.path.empty()) d.path = path;
    throw SpecError(d);
}

std::array<Vec2, 4> edge_midpoints(const Rect& r) {
    return {Vec2{r.x + r.w / 2, r.y}, Vec2{r.right(), r.y + r.h / 2},
            Vec2{r.x + r.w / 2, r.bottom()}, Vec2{r.x, r.y + r.h / 2}};
}

Vec2 normalized_dir(Vec2 from, Vec2 to) {
    double dx = to.x - from.x, dy = to.y - from.y;
    double len = std::hypot(dx, dy);
    if (len < 1e-12) return Vec2{1, 0};
    return Vec2{dx / len, dy / len};
}

// ---------------------------------------------------------- catmull-rom --

constexpr double kCurveBow = 12;  // midpoint offset along the left normal

struct Bezier {
    Vec2 b0, b1, b2, b3;
};

// Centripetal Catmull-Rom (alpha = 0.5) segment P1->P2 as a cubic Bezier.
Bezier catmull_rom_segment(Vec2 p0, Vec2 p1, Vec2 p2, Vec2 p3) {
    auto dist_a = [](Vec2 a, Vec2 b) { return std::sqrt(std::hypot(b.x - a.x, b.y - a.y)); };
    double d1 = dist_a(p0, p1), d2 = dist_a(p1, p2), d3 = dist_a(p2, p3);
    Bezier out{p1, p1, p2, p2};
    if (d1 > 1e-9 && d2 > 1e-9) {
        double w = 2 * d1 * d1 + 3 * d1 * d2 + d2 * d2;
        double denom = 3 * d1 * (d1 + d2);
        out.b1 = Vec2{(p2.x * d1 * d1 - p0.x * d2 * d2 + p1.x * w) / denom,
                      (p2.y * d1 * d1 - p0.y * d2 * d2 + p1.y * w) / denom};
    }
    if (d3 > 1e-9 && d2 > 1e-9) {
        double w = 2 * d3 * d3 + 3 * d3 * d2 + d2 * d2;
        double denom = 3 * d3 * (d3 + d2);
        out.b2 = Vec2{(p1.x * d3 * d3 - p3.x * d2 * d2 + p2.x * w) / denom,
                      (p1.y * d3 * d3 - p3.y * d2 * d2 + p2.y * w) / denom};
    }
    return out;
}

struct Routed {
    Geometry geom;
    Rect bbox;
    Vec2 start, start_toward;  // terminal segments for arrowhead orientation
    Vec2 end, end_from;
};

Routed route(const Rect& src, const Rect& dst, ConnectorEffect::Interp interp) {
    auto [a, b] = connector_endpoints(src, dst);
    Routed r;
    r.start = a;
    r.end = b;
    switch (interp) {
    case ConnectorEffect::Interp::Linear:
        r.geom = PolylineGeom{{a, b}, false};
        r.bbox = rect_from_points(a, b);
        r.start_toward = b;
        r.end_from = a;
        break;
    case ConnectorEffect::Interp::Stepwise: {
        Vec2 bend{b.x, a.y};
        r.geom = PolylineGeom{{a, bend, b}, false};
        r.bbox = rect_from_points(std::vector<Vec2>{a, bend, b});
        r.start_toward = (bend.x == a.x && bend.y == a.y) ? b : bend;
        r.end_from = (bend.x == b.x && bend.y == b.y) ? a : bend;
        break;
    }
    case ConnectorEffect::Interp::CatmullRom: {
        Vec2 d = normalized_dir(a, b);
        Vec2 normal{-d.y, d.x};
        Vec2 mid{(a.x + b.x) / 2 + normal.x * kCurveBow, (a.y + b.y) / 2 + normal.y * kCurveBow};
        // Phantom endpoints by reflection pin the spline's end tangents.
        Vec2 pre{2 * a.x - mid.x, 2 * a.y - mid.y};
        Vec2 post{2 * b.x - mid.x, 2 * b.y - mid.y};
        Bezier s1 = catmull_rom_segment(pre, a, mid, b);
        Bezier s2 = catmull_rom_segment(a, mid, b, post);
        auto f = [](double v) { return format_fixed(v, 2); };
        std::string d2 = "M " + f(a.x) + " " + f(a.y) + " C " + f(s1.b1.x) + " " + f(s1.b1.y) +
                         " " + f(s1.b2.x) + " " + f(s1.b2.y) + " " + f(mid.x) + " " + f(mid.y) +
                         " C " + f(s2.b1.x) + " " + f(s2.b1.y) + " " + f(s2.b2.x) + " " +
                         f(s2.b2.y) + " " + f(b.x) + " " + f(b.y);
        Rect bb = rect_from_points(
            std::vector<Vec2>{a, s1.b1, s1.b2, mid, s2.b1, s2.b2, b});
        r.geom = PathGeom{d2, bb};
        r.bbox = bb;
        r.start_toward = s1.b1;
        r.end_from = s2.b2;
        break;
    }
    }
    return r;
}

// Endpoints and terminal tangent hints of a parsed override path.
struct PathEnds {
    Vec2 start, start_toward, end, end_from;
};

PathEnds path_ends(const SvgPath& p) {
    PathEnds pe{};
    Vec2 cur{0, 0};
    Vec2 first{0, 0};
    bool have_start = false;
    for (const PathCmd& c : p.cmds) {
        Vec2 endpoint = cur;
        Vec2 toward = cur;   // point the pen moves toward first, from cur
        Vec2 from = cur;     // last control point before the endpoint
        switch (c.op) {
        case 'M':
            endpoint = {c.args[0], c.args[1]};
            toward = endpoint;
            from = cur;
            first = endpoint;
            break;
        case 'L':
            endpoint = {c.args[0], c.args[1]};
            toward = endpoint;
            from = cur;
            break;
        case 'C':
            endpoint = {c.args[4], c.args[5]};
            toward = {c.args[0], c.args[1]};
            from = {c.args[2], c.args[3]};
            break;
        case 'Q':
            endpoint = {c.args[2], c.args[3]};
            toward = {c.args[0], c.args[1]};
            from = {c.args[0], c.args[1]};
            break;
        case 'A':
            endpoint = {c.args[5], c.args[6]};
            toward = endpoint;
            from = cur;
            break;
        case 'Z':
            endpoint = first;
            toward = first;
            from = cur;
            break;
        default: break;
        }
        if (!have_start && c.op != 'M') {
            pe.start = cur;
            pe.start_toward = toward;
            have_start = true;
        }
        pe.end = endpoint;
        pe.end_from = from;
        cur = endpoint;
    }
    if (!have_start) {  // path with no drawing command
        pe.start = cur;
        pe.start_toward = Vec2{cur.x + 1, cur.y};
        pe.end_from = pe.start_toward;
    }
    return pe;
}

constexpr double kArrowLen = 8;
constexpr double kArrowHalfWidth = 3;

AnnoElement arrowhead(const std::string& id, Vec2 tip, Vec2 prev, const Style& style) {
    Vec2 u = normalized_dir(prev, tip);
    Vec2 base{tip.x - kArrowLen * u.x, tip.y - kArrowLen * u.y};
    Vec2 n{-u.y, u.x};
    std::vector<Vec2> pts{tip,
                          {base.x + kArrowHalfWidth * n.x, base.y + kArrowHalfWidth * n.y},
                          {base.x - kArrowHalfWidth * n.x, base.y - kArrowHalfWidth * n.y}};
    AnnoElement el;
    el.id = id;
    el.bbox = rect_from_points(pts);
    el.geom = PolylineGeom{std::move(pts), true};
    el.style = style;
    el.fill_with_stroke = true;
    return el;
}

void collect_agg_fields(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == Expr::Kind::Aggregate) out.push_back(e.field);
    if (e.lhs) collect_agg_fields(*e.lhs, out);
    if (e.rhs) collect_agg_fields(*e.rhs, out);
}

// ------------------------------------------------------- per-root state --

struct RootWork {
    std::size_t index = 0;
    const AnnotationRoot* root = nullptr;
    std::vector<ResolvedTarget> targets;
    std::vector<std::string> target_paths;
    bool done = false;

    bool ready(const std::map<std::string, Rect>& bound) const {
        for (const ResolvedTarget& rt : targets)
            if (rt.pending && !bound.count(rt.pending_id)) return false;
        return true;
    }
};

}  // namespace

std::pair<Vec2, Vec2> connector_endpoints(const Rect& src, const Rect& dst) {
    auto sm = edge_midpoints(src);
    auto dm = edge_midpoints(dst);
    Vec2 best_a = sm[0], best_b = dm[0];
    double best = -1;
    for (const Vec2& a : sm)
        for (const Vec2& b : dm) {
            double d = std::hypot(b.x - a.x, b.y - a.y);
            if (best < 0 || d < best) {
                best = d;
                best_a = a;
                best_b = b;
            }
        }
    return {best_a, best_b};
}

Geometry route_connector(const Rect& src, const Rect& dst, ConnectorEffect::Interp interp) {
    return route(src, dst, interp).geom;
}

AssembleResult assemble(const Spec& spec, const SceneGraph& scene, const DataTable& data,
                        OccupancyGrid& grid, DiagnosticSink& sink, int placement_budget) {
    AssembleResult result;

    // Id universe: every effect id plus every composite id.
    std::set<std::string> universe;
    for (const AnnotationRoot& r : spec.annotations) {
        if (r.text) universe.insert(r.text->id);
        if (r.enclosure) universe.insert(r.enclosure->id);
        if (r.connector) universe.insert(r.connector->id);
        if (r.indicator) universe.insert(r.indicator->id);
    }
    for (const Ensemble& e : spec.ensembles)
        if (e.kind == Ensemble::Kind::Composite) universe.insert(e.id);

    // Dangling ids are detectable before any rounds run.
    for (std::size_t i = 0; i < spec.ensembles.size(); ++i) {
        const Ensemble& e = spec.ensembles[i];
        std::string base = "ensembles/" + std::to_string(i);
        if (e.kind == Ensemble::Kind::Reference) {
            if (!universe.count(e.from_id))
                fail("UnresolvedReference", base + "/reference/from",
                     "no effect or composite with id '" + e.from_id + "'");
            if (!universe.count(e.to_id))
                fail("UnresolvedReference", base + "/reference/to",
                     "no effect or composite with id '" + e.to_id + "'");
        } else {
            for (std::size_t m = 0; m < e.members.size(); ++m)
                if (!universe.count(e.members[m]))
                    fail("UnresolvedReference", base + "/composite/members/" + std::to_string(m),
                         "no effect or composite with id '" + e.members[m] + "'");
        }
    }

    // Resolve every concrete target now; ById stays pending.
    std::vector<RootWork> work(spec.annotations.size());
    for (std::size_t i = 0; i < spec.annotations.size(); ++i) {
        RootWork& rw = work[i];
        rw.index = i;
        rw.root = &spec.annotations[i];
        for (std::size_t t = 0; t < rw.root->targets.size(); ++t) {
            std::string tpath =
                "annotations/" + std::to_string(i) + "/targets/" + std::to_string(t);
            ResolvedTarget rt =
                resolve_target(rw.root->targets[t], scene, data, sink, tpath);
            if (rt.pending && !universe.count(rt.pending_id))
                fail("UnresolvedReference", tpath,
                     "no effect or composite with id '" + rt.pending_id + "'");
            rw.targets.push_back(std::move(rt));
            rw.target_paths.push_back(std::move(tpath));
        }
    }

    std::map<std::string, Rect> bound;  // finalized effect/composite bboxes
    std::vector<std::vector<AnnoElement>> slots(work.size());

    auto refresh_composites = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Ensemble& e : spec.ensembles) {
                if (e.kind != Ensemble::Kind::Composite || bound.count(e.id)) continue;
                bool complete = true;
                Rect u;
                for (std::size_t m = 0; m < e.members.size(); ++m) {
                    auto it = bound.find(e.members[m]);
                    if (it == bound.end()) {
                        complete = false;
                        break;
                    }
                    u = m == 0 ? it->second : u.union_with(it->second);
                }
                if (complete) {
                    bound.emplace(e.id, u);
                    changed = true;
                }
            }
        }
    };

    std::size_t remaining = work.size();
    while (remaining > 0) {
        if (result.rounds == kMaxAssemblyRounds) {
            for (const RootWork& rw : work)
                if (!rw.done)
                    fail("CycleUnresolved", "annotations/" + std::to_string(rw.index),
                         "assembly did not reach a fixpoint in " +
                             std::to_string(kMaxAssemblyRounds) + " rounds");
        }
        refresh_composites();
        std::vector<RootWork*> ready;
        for (RootWork& rw : work)
            if (!rw.done && rw.ready(bound)) ready.push_back(&rw);
        if (ready.empty()) {
            for (const RootWork& rw : work) {
                if (rw.done) continue;
                for (std::size_t t = 0; t < rw.targets.size(); ++t)
                    if (rw.targets[t].pending && !bound.count(rw.targets[t].pending_id))
                        fail("CycleUnresolved", rw.target_paths[t],
                             "positional reference to '" + rw.targets[t].pending_id +
                                 "' cannot be resolved (dependency cycle)");
            }
        }
        ++result.rounds;

        // Bind pending boxes, compute target unions, and queue text.
        struct ReadyRoot {
            RootWork* rw;
            Rect target_union;
            Rect connector_dst;  // enclosure bbox once built, else the union
            int placement_slot = -1;
        };
        std::vector<ReadyRoot> batch;
        std::vector<PlacementRequest> requests;
        for (RootWork* rwp : ready) {
            for (ResolvedTarget& rt : rwp->targets)
                if (rt.pending) {
                    rt.union_bbox = bound.at(rt.pending_id);
                    rt.pending = false;
                }
            Rect u = rwp->targets.front().union_bbox;
            for (const ResolvedTarget& rt : rwp->targets) u = u.union_with(rt.union_bbox);
            ReadyRoot rr{rwp, u, u, -1};
            if (rwp->root->text) {
                const TextEffect& te = *rwp->root->text;
                TextSize ts = measure_text(te.content, te.style.font_size);
                PlacementRequest rq;
                rq.id = te.id;
                if (te.position && te.position->kind == Position::Kind::Fixed) {
                    std::string ppath = "annotations/" + std::to_string(rwp->index) +
                                        "/text/position/fixed";
                    Vec2 c = map_fixed(te.position->fixed, scene.scales, scene.plot, ppath);
                    c.x += te.position->dx;
                    c.y += te.position->dy;
                    rq.pinned = true;
                    rq.candidates.push_back(
                        {"fixed", Rect{c.x - ts.w / 2, c.y - ts.h / 2, ts.w, ts.h}});
                } else {
                    rq.candidates = candidate_anchors(u, Vec2{ts.w, ts.h}, te.position);
                }
                rr.placement_slot = static_cast<int>(requests.size());
                requests.push_back(std::move(rq));
            }
            batch.push_back(rr);
        }

        std::vector<PlacementResult> placed =
            place_all(requests, grid, placement_budget, sink);
        result.placements.insert(result.placements.end(), placed.begin(), placed.end());

        for (ReadyRoot& rr : batch) {
            RootWork& rw = *rr.rw;
            const AnnotationRoot& root = *rw.root;
            std::string base = "annotations/" + std::to_string(rw.index);
            std::vector<AnnoElement>& out = slots[rw.index];

            std::optional<Rect> text_box;
            std::optional<AnnoElement> text_el;
            if (root.text) {
                const TextEffect& te = *root.text;
                const PlacementResult& pr = placed[static_cast<std::size_t>(rr.placement_slot)];
                text_box = pr.box;
                AnnoElement el;
                el.id = te.id;
                el.is_text = true;
                el.text = te.content;
                el.style = te.style;
                el.bbox = pr.box;
                double tx = pr.box.x;
                if (te.style.text_anchor == "middle") tx = pr.box.x + pr.box.w / 2;
                else if (te.style.text_anchor == "end") tx = pr.box.right();
                el.geom = TextGeom{Vec2{tx, pr.box.y + kBaselineFactor * te.style.font_size},
                                   te.content};
                text_el = std::move(el);
                bound.emplace(te.id, pr.box);
            }

            if (root.enclosure) {
                const EnclosureEffect& enc = *root.enclosure;
                std::string p = base + "/enclosure";
                Rect box = rr.target_union.inflated(enc.padding);
                if (enc.position) {
                    const Position& pos = *enc.position;
                    if (pos.kind == Position::Kind::Fixed) {
                        Vec2 c = map_fixed(pos.fixed, scene.scales, scene.plot,
                                           p + "/position/fixed");
                        box.x = c.x - box.w / 2;
                        box.y = c.y - box.h / 2;
                    } else if (!(pos.kind == Position::Kind::Anchor &&
                                 pos.anchor == Anchor2D::Auto)) {
                        sink.warn("PositionIgnored", p + "/position",
                                  "enclosures honor only fixed positions and dx/dy offsets");
                    }
                    box.x += pos.dx;
                    box.y += pos.dy;
                }
                AnnoElement el;
                el.id = enc.id;
                el.style = enc.style;
                switch (enc.shape) {
                case EnclosureEffect::Shape::Rect:
                    el.geom = RectGeom{box};
                    el.bbox = box;
                    break;
                case EnclosureEffect::Shape::Ellipse:
                    el.geom = EllipseGeom{Vec2{box.x + box.w / 2, box.y + box.h / 2}, box.w / 2,
                                          box.h / 2};
                    el.bbox = box;
                    break;
                case EnclosureEffect::Shape::SvgPath: {
                    SvgPath sp = parse_svg_path(enc.path_d, p + "/shape/svgPath");
                    Rect b0 = sp.control_bbox();
                    double s = 1;
                    if (b0.w > 1e-9 && b0.h > 1e-9)
                        s = std::max(box.w / b0.w, box.h / b0.h);
                    else if (b0.w > 1e-9)
                        s = box.w / b0.w;
                    else if (b0.h > 1e-9)
                        s = box.h / b0.h;
                    if (s <= 1e-9) s = 1;
                    Vec2 t{box.x + box.w / 2 - (b0.x + b0.w / 2) * s,
                           box.y + box.h / 2 - (b0.y + b0.h / 2) * s};
                    SvgPath moved = sp.transformed(s, t);
                    Rect bb = moved.control_bbox();
                    el.geom = PathGeom{moved.to_string(2), bb};
                    el.bbox = bb;
                    break;
                }
                }
                rr.connector_dst = el.bbox;
                bound.emplace(enc.id, el.bbox);
                out.push_back(std::move(el));
            }

            if (root.connector) {
                const ConnectorEffect& con = *root.connector;
                std::string p = base + "/connector";
                std::optional<Rect> src, dst;
                if (text_box) {
                    src = *text_box;
                    dst = rr.connector_dst;
                } else if (rw.targets.size() >= 2) {
                    src = rw.targets[0].union_bbox;
                    dst = rw.targets[1].union_bbox;
                }
                if (!src) {
                    sink.warn("ConnectorSkipped", p,
                              "no text or second target to connect from");
                } else {
                    AnnoElement el;
                    el.id = con.id;
                    el.style = con.style;
                    Vec2 start, start_toward, end, end_from;
                    if (con.path_override) {
                        SvgPath sp = parse_svg_path(*con.path_override, p + "/path");
                        el.geom = PathGeom{sp.to_string(2), sp.control_bbox()};
                        el.bbox = sp.control_bbox();
                        PathEnds pe = path_ends(sp);
                        start = pe.start;
                        start_toward = pe.start_toward;
                        end = pe.end;
                        end_from = pe.end_from;
                    } else {
                        Routed r = route(*src, *dst, con.interpolation);
                        el.geom = std::move(r.geom);
                        el.bbox = r.bbox;
                        start = r.start;
                        start_toward = r.start_toward;
                        end = r.end;
                        end_from = r.end_from;
                    }
                    bound.emplace(con.id, el.bbox);
                    bool head_start = con.markers == ConnectorEffect::Markers::ArrowStart ||
                                      con.markers == ConnectorEffect::Markers::ArrowBoth;
                    bool head_end = con.markers == ConnectorEffect::Markers::ArrowEnd ||
                                    con.markers == ConnectorEffect::Markers::ArrowBoth;
                    std::string cid = el.id;
                    Style cstyle = el.style;
                    out.push_back(std::move(el));
                    if (head_start)
                        out.push_back(arrowhead(cid + "/arrow-start", start, start_toward, cstyle));
                    if (head_end)
                        out.push_back(arrowhead(cid + "/arrow-end", end, end_from, cstyle));
                }
            }

            if (root.indicator) {
                const IndicatorEffect& ind = *root.indicator;
                std::string p = base + "/indicator";
                std::vector<std::string> fields;
                collect_agg_fields(*ind.expr, fields);
                if (ind.expr2) collect_agg_fields(*ind.expr2, fields);
                const std::string& xf = spec.chart.encoding(Channel::X).field;
                const std::string& yf = spec.chart.encoding(Channel::Y).field;
                Channel axis = Channel::Y;
                if (std::find(fields.begin(), fields.end(), yf) != fields.end()) axis = Channel::Y;
                else if (std::find(fields.begin(), fields.end(), xf) != fields.end())
                    axis = Channel::X;
                const Scale& scale = scene.scales.at(axis);
                auto level = [&](const Expr& e, const std::string& epath) {
                    try {
                        return scale_apply_checked(scale, eval_row(e, data, 0));
                    } catch (const SpecError& err) {
                        rethrow_at(err, epath);
                    }
                };
                const Rect& plot = scene.plot;
                bool is_area = ind.kind == IndicatorEffect::Kind::Area;
                double v1 = level(*ind.expr, p + (is_area ? "/expr/0" : "/expr"));
                AnnoElement el;
                el.id = ind.id;
                el.style = ind.style;
                switch (ind.kind) {
                case IndicatorEffect::Kind::Line: {
                    std::vector<Vec2> pts =
                        axis == Channel::Y
                            ? std::vector<Vec2>{{plot.x, v1}, {plot.right(), v1}}
                            : std::vector<Vec2>{{v1, plot.y}, {v1, plot.bottom()}};
                    el.bbox = rect_from_points(pts);
                    el.geom = PolylineGeom{std::move(pts), false};
                    bound.emplace(el.id, el.bbox);
                    out.push_back(std::move(el));
                    break;
                }
                case IndicatorEffect::Kind::Area: {
                    double v2 = level(*ind.expr2, p + "/expr/1");
                    double lo = std::min(v1, v2), hi = std::max(v1, v2);
                    Rect band = axis == Channel::Y ? Rect{plot.x, lo, plot.w, hi - lo}
                                                   : Rect{lo, plot.y, hi - lo, plot.h};
                    el.geom = RectGeom{band};
                    el.bbox = band;
                    if (el.style.fill == "none") el.style.fill = el.style.stroke;
                    if (el.style.opacity == 1) el.style.opacity = 0.15;
                    el.style.stroke = "none";
                    bound.emplace(el.id, el.bbox);
                    out.push_back(std::move(el));
                    break;
                }
                case IndicatorEffect::Kind::Arrow: {
                    Rect line_rect = axis == Channel::Y ? Rect{plot.x, v1, plot.w, 0}
                                                        : Rect{v1, plot.y, 0, plot.h};
                    auto [tail, tip] = connector_endpoints(rr.target_union, line_rect);
                    std::vector<Vec2> pts{tail, tip};
                    el.bbox = rect_from_points(pts);
                    el.geom = PolylineGeom{std::move(pts), false};
                    bound.emplace(el.id, el.bbox);
                    Style istyle = el.style;
                    std::string iid = el.id;
                    out.push_back(std::move(el));
                    out.push_back(arrowhead(iid + "/arrow-end", tip, tail, istyle));
                    break;
                }
                }
            }

            if (text_el) out.push_back(std::move(*text_el));
            rw.done = true;
            --remaining;
        }
    }

    for (auto& slot : slots)
        for (AnnoElement& el : slot) result.elements.push_back(std::move(el));

    // Reference ensembles become plain link connectors drawn on top.
    refresh_composites();
    for (std::size_t i = 0; i < spec.ensembles.size(); ++i) {
        const Ensemble& e = spec.ensembles[i];
        if (e.kind != Ensemble::Kind::Reference) continue;
        auto [a, b] = connector_endpoints(bound.at(e.from_id), bound.at(e.to_id));
        AnnoElement el;
        el.id = "link/" + std::to_string(i);
        el.geom = PolylineGeom{{a, b}, false};
        el.bbox = rect_from_points(a, b);
        el.style = Style{};
        result.elements.push_back(std::move(el));
    }
    return result;
}

}  // namespace anno
