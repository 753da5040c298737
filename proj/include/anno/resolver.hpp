// resolver.hpp - Semantic half of the position resolver: maps annotation
// targets to concrete scene nodes (or pixel points) and their union bbox.
#pragma once

#include <string>
#include <vector>

#include "anno/data_table.hpp"
#include "anno/diagnostics.hpp"
#include "anno/scene.hpp"
#include "anno/spec.hpp"

namespace anno {

struct ResolvedTarget {
    std::vector<std::string> node_ids;  // matched scene nodes (empty for point targets)
    Rect union_bbox;                    // union of matched bboxes; zero-size for points
    bool pending = false;               // ById: bbox is bound later by the assembler
    std::string pending_id;
};

// Maps a fixed position to canvas pixels. Data-space coords go through the
// encoding scales (bounds-checked: DomainMiss outside the domain);
// pixel-space coords are plot-area-relative (origin = plot top-left).
Vec2 map_fixed(const FixedPos& fp, const std::map<Channel, Scale>& scales, const Rect& plot,
               const std::string& doc_path);

// Resolves one target against the scene. DataPoint -> mark nodes of the
// matching rows; Axis -> axis-part nodes filtered by part list and range;
// ChartPart -> that node (MissingChartPart when absent); Fixed -> zero-size
// node at the mapped point; None -> zero-size node at the plot's upper-right
// interior; ById -> pending. TargetEmpty when nothing matches.
ResolvedTarget resolve_target(const Target& t, const SceneGraph& scene, const DataTable& data,
                              DiagnosticSink& sink, const std::string& doc_path);

}  // namespace anno
