// assembler.hpp - Turns resolved targets + placement into final annotation
// geometry: enclosures, routed connectors, indicators, text runs, and the
// ensemble links between them. Runs in rounds so annotations may target
// each other by id.
#pragma once

#include <string>
#include <vector>

#include "anno/data_table.hpp"
#include "anno/diagnostics.hpp"
#include "anno/placement.hpp"
#include "anno/scene.hpp"
#include "anno/spec.hpp"

namespace anno {

// One render-ready annotation element, already in pixel space.
struct AnnoElement {
    std::string id;
    Geometry geom;
    Rect bbox;
    Style style;
    bool is_text = false;           // render as <text>; ink color = style.stroke
    std::string text;               // content when is_text
    bool fill_with_stroke = false;  // arrowheads: solid fill, no stroke
};

struct AssembleResult {
    // Paint order: per root (ascending) enclosure, connector (+arrowheads),
    // indicator, text; then the reference links.
    std::vector<AnnoElement> elements;
    std::vector<PlacementResult> placements;  // all text placements, spec order
    int rounds = 0;                           // rounds the fixpoint loop took
};

// Facing-edge-midpoint pair with minimal distance (16 combinations).
std::pair<Vec2, Vec2> connector_endpoints(const Rect& src, const Rect& dst);

// linear -> segment, stepwise -> L with the bend at (dst.x, src.y),
// catmull-rom -> centripetal (alpha=0.5) spline through the two endpoints
// and a midpoint pushed 12px along the left normal.
Geometry route_connector(const Rect& src, const Rect& dst, ConnectorEffect::Interp interp);

// Assembles all annotation roots and ensembles against the scene. Text
// effects claim occupancy cells through `grid`; everything else is routed
// geometry. Rounds bind ById targets to effects finalized earlier; a stalled
// round raises UnresolvedReference (unknown id) or CycleUnresolved.
AssembleResult assemble(const Spec& spec, const SceneGraph& scene, const DataTable& data,
                        OccupancyGrid& grid, DiagnosticSink& sink, int placement_budget);

inline constexpr int kMaxAssemblyRounds = 10;

}  // namespace anno
