// resolver.cpp - target resolution against the compiled scene.
#include "anno/resolver.hpp"

#include <algorithm>
#include <set>

namespace anno {

namespace {

[[noreturn]] void rethrow_at(const SpecError& e, const std::string& path) {
    Diagnostic d = e.diagnostic();
    if (d.path.empty()) d.path = path;
    throw SpecError(d);
}

// Interior offset of the synthetic point used by targetless annotations.
constexpr double kNoneInset = 10;

Rect point_rect(Vec2 p) { return Rect{p.x, p.y, 0, 0}; }

// Epoch ms of a range endpoint on a time axis (number = ms, string = ISO).
double temporal_endpoint(const Value& v, const std::string& path) {
    if (v.is_number()) return v.as_number();
    if (v.is_temporal()) return static_cast<double>(v.as_temporal().ms);
    if (v.is_string()) {
        if (auto ms = parse_iso8601(v.as_string())) return static_cast<double>(*ms);
    }
    fail("TypeError", path, "range endpoint '" + value_to_text(v) + "' is not a date");
}

// Does an axis-part value fall inside the [a, b] range? Categorical axes
// read the range positionally (the drawn span between the two categories);
// continuous axes compare numerically.
bool value_in_range(const Value& v, const Scale& scale, const Value& a, const Value& b,
                    const std::string& path) {
    if (v.is_null()) return false;  // the axis label has no value
    if (scale.is_continuous()) {
        double x;
        if (scale.kind == Scale::Kind::Time) {
            x = v.is_temporal() ? static_cast<double>(v.as_temporal().ms)
                                : temporal_endpoint(v, path);
            double lo = temporal_endpoint(a, path), hi = temporal_endpoint(b, path);
            return x >= std::min(lo, hi) && x <= std::max(lo, hi);
        }
        if (!v.is_number()) return false;
        if (!a.is_number() || !b.is_number())
            fail("TypeError", path, "range endpoints must be numbers on a numeric axis");
        x = v.as_number();
        return x >= std::min(a.as_number(), b.as_number()) &&
               x <= std::max(a.as_number(), b.as_number());
    }
    if (!a.is_string() || !b.is_string())
        fail("TypeError", path, "range endpoints must be category strings on this axis");
    auto ia = scale.category_index(a.as_string());
    auto ib = scale.category_index(b.as_string());
    if (!ia) fail("DomainMiss", path, "'" + a.as_string() + "' is not in the axis domain");
    if (!ib) fail("DomainMiss", path, "'" + b.as_string() + "' is not in the axis domain");
    auto iv = scale.category_index(value_to_text(v));
    if (!iv) return false;
    return *iv >= std::min(*ia, *ib) && *iv <= std::max(*ia, *ib);
}

// Evaluates the range predicate with `datum.value` bound to the part value.
bool range_expr_match(const Expr& e, const Value& v, EncodingType enc_type) {
    if (v.is_null()) return false;
    ColumnType ct = ColumnType::String;
    if (enc_type == EncodingType::Quantitative) ct = ColumnType::Number;
    else if (enc_type == EncodingType::Temporal) ct = ColumnType::Temporal;
    DataTable one({Column{"value", ct}}, {{v}});
    Value out = eval_row(e, one, 0);  // booleans evaluate to 1.0 / 0.0
    return out.is_number() && out.as_number() != 0.0;
}

ResolvedTarget from_nodes(std::vector<const SceneNode*> nodes, const std::string& doc_path,
                          const char* what) {
    if (nodes.empty()) fail("TargetEmpty", doc_path, std::string(what) + " matched no scene nodes");
    ResolvedTarget rt;
    rt.union_bbox = nodes.front()->bbox;
    for (const SceneNode* n : nodes) {
        rt.node_ids.push_back(n->id);
        rt.union_bbox = rt.union_bbox.union_with(n->bbox);
    }
    return rt;
}

}  // namespace

Vec2 map_fixed(const FixedPos& fp, const std::map<Channel, Scale>& scales, const Rect& plot,
               const std::string& doc_path) {
    if (fp.space == FixedPos::Space::Pixel)
        return Vec2{plot.x + fp.x.as_number(), plot.y + fp.y.as_number()};
    try {
        return Vec2{scale_apply_checked(scales.at(Channel::X), fp.x),
                    scale_apply_checked(scales.at(Channel::Y), fp.y)};
    } catch (const SpecError& e) {
        rethrow_at(e, doc_path);
    }
}

ResolvedTarget resolve_target(const Target& t, const SceneGraph& scene, const DataTable& data,
                              DiagnosticSink& sink, const std::string& doc_path) {
    switch (t.kind) {
    case Target::Kind::ById: {
        ResolvedTarget rt;
        rt.pending = true;
        rt.pending_id = t.id;
        return rt;
    }
    case Target::Kind::Fixed: {
        ResolvedTarget rt;
        rt.union_bbox = point_rect(map_fixed(t.fixed, scene.scales, scene.plot, doc_path));
        return rt;
    }
    case Target::Kind::None: {
        ResolvedTarget rt;
        rt.union_bbox =
            point_rect(Vec2{scene.plot.right() - kNoneInset, scene.plot.y + kNoneInset});
        return rt;
    }
    case Target::Kind::ChartPart: {
        const SceneNode* hit = nullptr;
        walk_scene(scene.root, [&](const SceneNode& n) {
            if (const auto* tag = std::get_if<ChartPartTag>(&n.tag))
                if (tag->part == t.part && !hit) hit = &n;
        });
        if (!hit)
            fail("MissingChartPart", doc_path,
                 std::string("the chart has no ") + chart_part_name(t.part));
        return from_nodes({hit}, doc_path, "chart part");
    }
    case Target::Kind::DataPoint: {
        std::set<std::size_t> rows;
        if (t.expr) {
            for (std::size_t r : select_rows(*t.expr, data, sink)) rows.insert(r);
        } else {
            rows.insert(t.indices.begin(), t.indices.end());
        }
        std::vector<const SceneNode*> nodes;
        walk_scene(scene.root, [&](const SceneNode& n) {
            if (const auto* tag = std::get_if<MarkTag>(&n.tag))
                if (rows.count(tag->row)) nodes.push_back(&n);
        });
        if (nodes.empty())
            fail("TargetEmpty", doc_path,
                 rows.empty() ? "the expression selected no rows"
                              : "no marks survive for the selected rows");
        return from_nodes(std::move(nodes), doc_path, "data-point target");
    }
    case Target::Kind::Axis: {
        const Scale& scale = scene.scales.at(t.axis);
        EncodingType enc_type = EncodingType::Quantitative;
        // Channel type drives how range values are read.
        if (t.range_expr || t.range_pair) {
            // find the encoding type from the scale kind
            if (scale.kind == Scale::Kind::Time) enc_type = EncodingType::Temporal;
            else if (!scale.is_continuous()) enc_type = EncodingType::Nominal;
        }
        std::vector<const SceneNode*> nodes;
        walk_scene(scene.root, [&](const SceneNode& n) {
            const auto* tag = std::get_if<AxisTag>(&n.tag);
            if (!tag || tag->axis != t.axis) return;
            if (std::find(t.parts.begin(), t.parts.end(), tag->part) == t.parts.end()) return;
            if (t.range_pair &&
                !value_in_range(tag->value, scale, t.range_pair->first, t.range_pair->second,
                                doc_path))
                return;
            if (t.range_expr && !range_expr_match(*t.range_expr, tag->value, enc_type))
                return;
            nodes.push_back(&n);
        });
        if (nodes.empty()) fail("TargetEmpty", doc_path, "no axis parts match");
        return from_nodes(std::move(nodes), doc_path, "axis target");
    }
    }
    fail("SchemaError", doc_path, "unreachable target kind");
}

}  // namespace anno
