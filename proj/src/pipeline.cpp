// pipeline.cpp - glue over the stage functions; no logic of its own.
#include "anno/pipeline.hpp"

#include "json.hpp"

#include "anno/placement.hpp"
#include "anno/scene.hpp"

namespace anno {

CompileOutput compile_spec_text(const std::string& text, const std::string& base_dir,
                                const CompileOptions& opts, DiagnosticSink& sink) {
    CompileOutput out;
    nlohmann::json doc = parse_document(text);
    out.data = load_spec_data(doc, base_dir, opts.data_override);
    out.spec = parse_spec(doc, out.data);
    auto scales = infer_scales(out.spec.chart, out.data);
    out.scene = build_scene(out.spec.chart, out.data, scales, sink);
    OccupancyGrid grid = build_grid(out.scene, opts.grid_size);
    out.assembly = assemble(out.spec, out.scene, out.data, grid, sink, opts.placement_budget);
    out.svg = render_svg(out.scene, out.assembly.elements);
    if (opts.dump_scene) out.scene_json = scene_to_json(out.scene);
    return out;
}

}  // namespace anno
